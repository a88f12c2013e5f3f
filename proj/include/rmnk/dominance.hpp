#pragma once

// Pareto dominance for maximization and the 1-bit-flip neighborhood.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "rmnk/errors.hpp"
#include "rmnk/landscape.hpp"

namespace rmnk {

enum class Comparison { FirstDominates, SecondDominates, Incomparable, Equal };

/// True iff a_i >= b_i for every i and a_j > b_j for some j.
inline bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

inline Comparison compare(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  bool a_better = false;
  bool b_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) a_better = true;
    else if (a[i] < b[i]) b_better = true;
  }
  if (a_better && b_better) return Comparison::Incomparable;
  if (a_better) return Comparison::FirstDominates;
  if (b_better) return Comparison::SecondDominates;
  return Comparison::Equal;
}

using EvaluatedSolution = std::pair<Solution, ObjectiveVector>;

/// Indices of the entries no other entry dominates, in input order. Equal
/// vectors never dominate each other, so duplicates survive together.
///
/// Candidates are visited by decreasing objective sum (ties broken
/// lexicographically), so any dominator is visited before what it dominates
/// and each candidate only needs checking against the survivors so far.
inline std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> vs) {
  std::vector<std::size_t> order(vs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> sums(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    sums[i] = std::accumulate(vs[i].begin(), vs[i].end(), 0.0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    return vs[a] > vs[b];
  });

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return dominates(vs[k], vs[idx]);
    });
    if (!dominated) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

inline std::vector<EvaluatedSolution> nondominated_filter(std::span<const EvaluatedSolution> entries) {
  std::vector<ObjectiveVector> vs;
  vs.reserve(entries.size());
  for (const auto& e : entries) vs.push_back(e.second);
  std::vector<EvaluatedSolution> out;
  for (std::size_t i : nondominated_indices(vs)) out.push_back(entries[i]);
  return out;
}

/// The N solutions at Hamming distance 1, neighbor i having bit i flipped.
inline std::vector<Solution> neighbors(const Solution& x) {
  std::vector<Solution> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x.flipped(i));
  return out;
}

/// Scans the neighborhood of a current solution using per-bit deltas, so a
/// neighbor costs O((K+1)*M) instead of a full O(N*M) evaluation.
///
/// Dominance decisions always agree with comparing full `Instance::evaluate`
/// results: a delta whose magnitude is within rounding noise of zero triggers
/// an exact re-evaluation of that neighbor.
class NeighborhoodScanner {
 public:
  explicit NeighborhoodScanner(const Instance& inst)
      : inst_(inst),
        current_(static_cast<std::size_t>(inst.m())),
        neighbor_(static_cast<std::size_t>(inst.m())),
        delta_(static_cast<std::size_t>(inst.m())),
        patterns_(static_cast<std::size_t>(inst.n())) {}

  void reset(const Solution& x) {
    if (x.size() != static_cast<std::size_t>(inst_.n()))
      throw LengthMismatch(static_cast<std::size_t>(inst_.n()), x.size());
    x_ = x;
    inst_.evaluate_into(x_, current_);
    for (std::size_t i = 0; i < patterns_.size(); ++i) patterns_[i] = inst_.pattern(i, x_);
  }

  const Solution& solution() const noexcept { return x_; }
  const ObjectiveVector& objectives() const noexcept { return current_; }

  /// True iff flipping bit j yields a solution that dominates the current one.
  bool flip_dominates(std::size_t j) {
    const auto m = current_.size();
    std::fill(delta_.begin(), delta_.end(), 0.0);
    const int shift_base = inst_.k();
    for (int i : inst_.dependents(j)) {
      const auto ui = static_cast<std::size_t>(i);
      const std::size_t old_p = patterns_[ui];
      const std::size_t new_p = old_p ^ flip_mask(ui, j, shift_base);
      const auto y_old = inst_.row(ui, old_p);
      const auto y_new = inst_.row(ui, new_p);
      for (std::size_t o = 0; o < m; ++o) delta_[o] += y_new[o] - y_old[o];
    }
    bool strict = false;
    bool ambiguous = false;
    for (std::size_t o = 0; o < m; ++o) {
      const double d = delta_[o];
      if (std::abs(d) <= kAmbiguity) {
        ambiguous = true;
      } else if (d < 0.0) {
        return false;
      } else {
        strict = true;
      }
    }
    if (!ambiguous) return strict;
    inst_.evaluate_into(x_.flipped(j), neighbor_);
    return dominates(neighbor_, current_);
  }

  /// Bits whose flip gives a dominating neighbor, ascending.
  std::vector<std::size_t> dominating_moves() {
    std::vector<std::size_t> moves;
    for (std::size_t j = 0; j < x_.size(); ++j)
      if (flip_dominates(j)) moves.push_back(j);
    return moves;
  }

  bool is_local_optimum() {
    for (std::size_t j = 0; j < x_.size(); ++j)
      if (flip_dominates(j)) return false;
    return true;
  }

  /// Moves to the neighbor obtained by flipping bit j (objectives fully re-evaluated).
  void apply(std::size_t j) {
    x_.flip(j);
    inst_.evaluate_into(x_, current_);
    const int shift_base = inst_.k();
    for (int i : inst_.dependents(j)) {
      const auto ui = static_cast<std::size_t>(i);
      patterns_[ui] ^= flip_mask(ui, j, shift_base);
    }
  }

 private:
  // Deltas are on the unscaled sum of N table values. Two full N-term sums
  // (N <= a few hundred) carry far less rounding error than this threshold,
  // so a delta beyond it has the same sign as the exact comparison.
  static constexpr double kAmbiguity = 1e-11;

  std::size_t flip_mask(std::size_t i, std::size_t j, int k) const {
    if (i == j) return std::size_t{1} << k;
    const auto& row = inst_.links()[i];
    const auto pos = static_cast<int>(std::find(row.begin(), row.end(), static_cast<int>(j)) - row.begin());
    return std::size_t{1} << (k - 1 - pos);
  }

  const Instance& inst_;
  Solution x_;
  ObjectiveVector current_;
  ObjectiveVector neighbor_;
  ObjectiveVector delta_;
  std::vector<std::size_t> patterns_;
};

/// Neighbors y of x with f(y) dominating f(x), in bit-index order.
inline std::vector<Solution> dominating_neighbors(const Instance& inst, const Solution& x) {
  NeighborhoodScanner scanner(inst);
  scanner.reset(x);
  std::vector<Solution> out;
  for (std::size_t j : scanner.dominating_moves()) out.push_back(x.flipped(j));
  return out;
}

}  // namespace rmnk
