#pragma once

// Exhaustive census of Pareto local optima (PLO) and of the Pareto optimal set.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "rmnk/dominance.hpp"
#include "rmnk/errors.hpp"
#include "rmnk/landscape.hpp"
#include "rmnk/parallel.hpp"

namespace rmnk {

inline constexpr int kDefaultEnumerationLimit = 24;
inline constexpr int kCachedModeMaxN = 20;

inline bool is_pareto_local_optimum(const Instance& inst, const Solution& x) {
  NeighborhoodScanner scanner(inst);
  scanner.reset(x);
  return scanner.is_local_optimum();
}

struct EnumerationOptions {
  enum class Mode { Auto, Cached, Streaming };

  int limit = kDefaultEnumerationLimit;
  bool keep_lists = false;
  unsigned threads = 1;
  /// Auto stores every objective vector when N <= 20 and streams otherwise.
  Mode mode = Mode::Auto;
};

struct PloSummary {
  std::uint64_t n_plo = 0;
  std::uint64_t n_pareto = 0;
  std::uint64_t space_size = 0;
  double plo_fraction = 0.0;
  std::optional<std::vector<Solution>> plo_list;
  std::optional<std::vector<Solution>> pareto_list;
};

namespace detail {

// Index-based nondominated filter over `ids`, reading vectors through
// `value_of(id)`. Same visiting order argument as nondominated_indices.
template <typename ValueOf>
std::vector<std::uint64_t> nondominated_ids(std::vector<std::uint64_t> ids, std::size_t m,
                                            ValueOf&& value_of) {
  std::vector<double> sums(ids.size());
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t a = 0; a < ids.size(); ++a) {
    const auto v = value_of(ids[a]);
    sums[a] = std::accumulate(v.begin(), v.end(), 0.0);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    const auto va = value_of(ids[a]);
    const auto vb = value_of(ids[b]);
    for (std::size_t o = 0; o < m; ++o)
      if (va[o] != vb[o]) return va[o] > vb[o];
    return ids[a] < ids[b];
  });
  std::vector<std::uint64_t> kept;
  for (std::size_t a : order) {
    const auto v = value_of(ids[a]);
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](std::uint64_t k) {
      return dominates(value_of(k), v);
    });
    if (!dominated) kept.push_back(ids[a]);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

struct Census {
  std::uint64_t n_plo = 0;
  std::vector<std::uint64_t> plo;  // empty unless requested
  std::vector<std::uint64_t> pareto;
};

struct RangeResult {
  std::vector<std::uint64_t> plo;
  std::vector<std::uint64_t> archive;
  std::vector<double> archive_values;
};

inline void check_enumerable(const Instance& inst, int limit) {
  if (inst.n() > limit || inst.n() > 62) throw SpaceTooLarge(inst.n(), std::min(limit, 62));
}

// Census over a table holding all 2^N objective vectors.
inline Census census_cached(const Instance& inst, unsigned threads) {
  const auto n = static_cast<std::size_t>(inst.n());
  const auto m = static_cast<std::size_t>(inst.m());
  const std::uint64_t space = std::uint64_t{1} << n;
  std::vector<double> cache(space * m);
  const auto ranges = split_range(space, std::max(1U, threads) * 4U);

  parallel_for(ranges.size(), threads, [&](std::size_t r) {
    for (std::uint64_t x = ranges[r].first; x < ranges[r].second; ++x)
      inst.evaluate_into(x, std::span<double>(cache.data() + x * m, m));
  });

  auto value_of = [&](std::uint64_t x) { return std::span<const double>(cache.data() + x * m, m); };

  std::vector<RangeResult> parts(ranges.size());
  parallel_for(ranges.size(), threads, [&](std::size_t r) {
    auto& plo = parts[r].plo;
    for (std::uint64_t x = ranges[r].first; x < ranges[r].second; ++x) {
      const auto fx = value_of(x);
      bool local_opt = true;
      for (std::size_t j = 0; j < n && local_opt; ++j)
        if (dominates(value_of(x ^ (std::uint64_t{1} << j)), fx)) local_opt = false;
      if (local_opt) plo.push_back(x);
    }
    // Every dominated point is dominated by some PLO (follow dominating
    // neighbors until none remain), so filtering the PLO alone is exact.
    parts[r].archive = nondominated_ids(plo, m, value_of);
  });

  Census census;
  std::vector<std::uint64_t> merged;
  for (auto& p : parts) {
    census.plo.insert(census.plo.end(), p.plo.begin(), p.plo.end());
    merged.insert(merged.end(), p.archive.begin(), p.archive.end());
  }
  census.n_plo = census.plo.size();
  census.pareto = nondominated_ids(std::move(merged), m, value_of);
  return census;
}

// Census with O(N*M) working memory per worker plus the Pareto archive.
inline Census census_streaming(const Instance& inst, unsigned threads, bool keep_plo) {
  const auto n = static_cast<std::size_t>(inst.n());
  const auto m = static_cast<std::size_t>(inst.m());
  const std::uint64_t space = std::uint64_t{1} << n;
  const auto ranges = split_range(space, std::max(1U, threads) * 4U);
  std::vector<RangeResult> parts(ranges.size());
  std::vector<std::uint64_t> counts(ranges.size(), 0);

  parallel_for(ranges.size(), threads, [&](std::size_t r) {
    NeighborhoodScanner scanner(inst);
    auto& part = parts[r];
    for (std::uint64_t x = ranges[r].first; x < ranges[r].second; ++x) {
      scanner.reset(Solution::from_index(x, n));
      if (!scanner.is_local_optimum()) continue;
      ++counts[r];
      if (keep_plo) part.plo.push_back(x);
      const auto& fx = scanner.objectives();
      bool dominated = false;
      for (std::size_t a = 0; a < part.archive.size() && !dominated; ++a)
        dominated = dominates(std::span<const double>(part.archive_values.data() + a * m, m), fx);
      if (dominated) continue;
      std::size_t w = 0;
      for (std::size_t a = 0; a < part.archive.size(); ++a) {
        const std::span<const double> va(part.archive_values.data() + a * m, m);
        if (dominates(fx, va)) continue;
        part.archive[w] = part.archive[a];
        std::copy(va.begin(), va.end(), part.archive_values.begin() + static_cast<std::ptrdiff_t>(w * m));
        ++w;
      }
      part.archive.resize(w);
      part.archive_values.resize(w * m);
      part.archive.push_back(x);
      part.archive_values.insert(part.archive_values.end(), fx.begin(), fx.end());
    }
  });

  Census census;
  std::vector<std::uint64_t> merged;
  std::vector<double> merged_values;
  for (std::size_t r = 0; r < parts.size(); ++r) {
    census.n_plo += counts[r];
    census.plo.insert(census.plo.end(), parts[r].plo.begin(), parts[r].plo.end());
    merged.insert(merged.end(), parts[r].archive.begin(), parts[r].archive.end());
    merged_values.insert(merged_values.end(), parts[r].archive_values.begin(), parts[r].archive_values.end());
  }
  std::vector<std::uint64_t> positions(merged.size());
  std::iota(positions.begin(), positions.end(), std::uint64_t{0});
  auto kept = nondominated_ids(positions, m, [&](std::uint64_t p) {
    return std::span<const double>(merged_values.data() + p * m, m);
  });
  for (auto p : kept) census.pareto.push_back(merged[p]);
  std::sort(census.pareto.begin(), census.pareto.end());
  return census;
}

}  // namespace detail

/// Complete enumeration of {0,1}^N. Counts do not depend on `threads`.
inline PloSummary enumerate_plo(const Instance& inst, const EnumerationOptions& options = {}) {
  detail::check_enumerable(inst, options.limit);
  const bool cached = options.mode == EnumerationOptions::Mode::Cached ||
                      (options.mode == EnumerationOptions::Mode::Auto && inst.n() <= kCachedModeMaxN);
  const auto n = static_cast<std::size_t>(inst.n());

  PloSummary s;
  s.space_size = std::uint64_t{1} << n;
  const detail::Census census = cached ? detail::census_cached(inst, options.threads)
                                       : detail::census_streaming(inst, options.threads, options.keep_lists);
  s.n_plo = census.n_plo;
  s.n_pareto = census.pareto.size();
  s.plo_fraction = static_cast<double>(s.n_plo) / static_cast<double>(s.space_size);
  if (options.keep_lists) {
    auto to_solutions = [n](const std::vector<std::uint64_t>& ids) {
      std::vector<Solution> out;
      out.reserve(ids.size());
      for (auto id : ids) out.push_back(Solution::from_index(id, n));
      return out;
    };
    s.plo_list = to_solutions(census.plo);
    s.pareto_list = to_solutions(census.pareto);
  }
  return s;
}

/// The Pareto optimal set, sorted by integer encoding.
inline std::vector<Solution> enumerate_pareto_set(const Instance& inst, EnumerationOptions options = {}) {
  options.keep_lists = true;
  return std::move(*enumerate_plo(inst, options).pareto_list);
}

}  // namespace rmnk
