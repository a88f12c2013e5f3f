#pragma once

// Pareto hill-climbing: from a random start, repeatedly jump to a neighbor
// chosen uniformly among those dominating the current solution, until none
// exists. The number of jumps is the length of the Pareto adaptive walk.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rmnk/dominance.hpp"
#include "rmnk/landscape.hpp"
#include "rmnk/parallel.hpp"
#include "rmnk/rng.hpp"
#include "rmnk/stats.hpp"

namespace rmnk {

struct WalkRecord {
  Solution start;
  Solution final;
  std::size_t steps = 0;
  ObjectiveVector final_objectives;
  /// Every visited solution from start to final, when requested.
  std::optional<std::vector<Solution>> path;
};

struct WalkStats {
  std::size_t n_walks = 0;
  double mean_length = 0.0;
  /// Sample standard deviation (n-1 denominator); 0 for a single walk.
  double sd_length = 0.0;
  std::optional<std::vector<std::size_t>> lengths;
};

inline WalkRecord phc_walk(const Instance& inst, const Solution& start, RandomStream& rng,
                           bool record_path = false) {
  NeighborhoodScanner scanner(inst);
  scanner.reset(start);
  WalkRecord rec;
  rec.start = start;
  if (record_path) rec.path.emplace().push_back(start);
  for (;;) {
    const auto moves = scanner.dominating_moves();
    if (moves.empty()) break;
    scanner.apply(moves[uniform_index(rng, moves.size())]);
    ++rec.steps;
    if (record_path) rec.path->push_back(scanner.solution());
  }
  rec.final = scanner.solution();
  rec.final_objectives = scanner.objectives();
  return rec;
}

/// Lengths of `n_walks` walks from fresh uniform starts. Walk w draws from its
/// own stream derive_seed(master_seed, w), so results do not depend on `threads`.
inline std::vector<std::size_t> walk_lengths(const Instance& inst, std::size_t n_walks,
                                             std::uint64_t master_seed, unsigned threads = 1) {
  std::vector<std::size_t> lengths(n_walks, 0);
  const auto n = static_cast<std::size_t>(inst.n());
  parallel_for(n_walks, threads, [&](std::size_t w) {
    RandomStream rng = make_stream(derive_seed(master_seed, static_cast<std::uint64_t>(w)));
    const Solution start = random_solution(n, rng);
    lengths[w] = phc_walk(inst, start, rng).steps;
  });
  return lengths;
}

inline WalkStats summarize_lengths(std::vector<std::size_t> lengths, bool keep_lengths) {
  WalkStats stats;
  stats.n_walks = lengths.size();
  if (lengths.empty()) return stats;
  double sum = 0.0;
  for (auto l : lengths) sum += static_cast<double>(l);
  stats.mean_length = sum / static_cast<double>(lengths.size());
  if (lengths.size() > 1) {
    double ss = 0.0;
    for (auto l : lengths) {
      const double d = static_cast<double>(l) - stats.mean_length;
      ss += d * d;
    }
    stats.sd_length = std::sqrt(ss / static_cast<double>(lengths.size() - 1));
  }
  if (keep_lengths) stats.lengths = std::move(lengths);
  return stats;
}

inline WalkStats walk_campaign(const Instance& inst, std::size_t n_walks, std::uint64_t master_seed,
                               unsigned threads = 1, bool keep_lengths = false) {
  if (n_walks == 0) throw InvalidParameter("a walk campaign needs at least one walk");
  return summarize_lengths(walk_lengths(inst, n_walks, master_seed, threads), keep_lengths);
}

/// Predicted natural log of the PLO count from a mean walk length, using a
/// lin-log fit (ln n_plo = a * length + b). Only meaningful for the N the fit
/// was trained on.
inline double estimate_log_plo(double mean_length, const RegressionFit& fit) {
  return fit.a * mean_length + fit.b;
}

}  // namespace rmnk
