#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmnk/correlated_sampling.hpp"
#include "rmnk/errors.hpp"
#include "rmnk/rng.hpp"

namespace rmnk {

/// Largest K for which component tables are materialized (2^(K+1) rows per bit).
inline constexpr int kMaxK = 24;

/// A point of {0,1}^N. Bit i is variable x_{i+1}; for N <= 64 the canonical
/// integer encoding puts bit i at weight 2^i.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::size_t n) : bits_(n, 0) {}

  static Solution from_index(std::uint64_t index, std::size_t n) {
    Solution s(n);
    for (std::size_t i = 0; i < n; ++i) s.bits_[i] = static_cast<std::uint8_t>((index >> i) & 1U);
    return s;
  }

  /// Character i of `text` is bit i.
  static Solution from_string(std::string_view text) {
    Solution s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1')
        throw InvalidParameter("solution string must contain only '0' and '1'");
      s.bits_[i] = text[i] == '1' ? 1 : 0;
    }
    return s;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) noexcept { bits_[i] ^= 1U; }

  Solution flipped(std::size_t i) const {
    Solution s = *this;
    s.flip(i);
    return s;
  }

  std::uint64_t to_index() const {
    if (bits_.size() > 64) throw InvalidParameter("integer encoding requires N <= 64");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) v |= static_cast<std::uint64_t>(bits_[i]) << i;
    return v;
  }

  std::string to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out[i] = '1';
    return out;
  }

  friend auto operator<=>(const Solution&, const Solution&) = default;
  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::size_t hamming_distance(const Solution& a, const Solution& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

using ObjectiveVector = std::vector<double>;

/// Links of each bit: links[i] lists the K other bits feeding component i.
using EpistasisLinks = std::vector<std::vector<int>>;

struct LandscapeParams {
  int n = 0;
  int k = 0;
  int m = 2;
  double rho = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const LandscapeParams&, const LandscapeParams&) = default;
};

inline void validate_params(const LandscapeParams& p) {
  if (p.n < 1) throw InvalidParameter("N must be at least 1");
  if (p.k < 0 || p.k > p.n - 1 || p.k > kMaxK) throw InvalidK(p.k, p.n);
  validate_rho(p.m, p.rho);
}

/// A materialized rhoMNK-landscape. Immutable; evaluation is safe from any
/// number of threads.
///
/// Component tables are stored flat: the M values of row r of bit i live at
/// values[(i * rows + r) * M]. The row index is the bit pattern
/// (x_i, x_{links[i][0]}, ..., x_{links[i][K-1]}) read with x_i as the most
/// significant bit.
class Instance {
 public:
  Instance(LandscapeParams params, EpistasisLinks links, std::vector<double> values)
      : params_(params), links_(std::move(links)), values_(std::move(values)) {
    validate_params(params_);
    const auto n = static_cast<std::size_t>(params_.n);
    if (links_.size() != n) throw InvalidParameter("link table must have N rows");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = links_[i];
      if (row.size() != static_cast<std::size_t>(params_.k))
        throw InvalidParameter("link row " + std::to_string(i) + " must have K entries");
      for (std::size_t a = 0; a < row.size(); ++a) {
        if (row[a] < 0 || row[a] >= params_.n || row[a] == static_cast<int>(i))
          throw InvalidParameter("link row " + std::to_string(i) + " has an invalid index");
        for (std::size_t b = 0; b < a; ++b)
          if (row[a] == row[b])
            throw InvalidParameter("link row " + std::to_string(i) + " repeats an index");
      }
    }
    if (values_.size() != n * rows() * static_cast<std::size_t>(params_.m))
      throw InvalidParameter("component tables have the wrong size");
    for (double v : values_)
      if (!(v >= 0.0 && v < 1.0)) throw InvalidParameter("component table value outside [0,1)");

    dependents_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      dependents_[i].push_back(static_cast<int>(i));
      for (int j : links_[i]) dependents_[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
    }
    for (auto& d : dependents_) std::sort(d.begin(), d.end());
  }

  const LandscapeParams& params() const noexcept { return params_; }
  int n() const noexcept { return params_.n; }
  int k() const noexcept { return params_.k; }
  int m() const noexcept { return params_.m; }
  double rho() const noexcept { return params_.rho; }
  std::uint64_t seed() const noexcept { return params_.seed; }
  const EpistasisLinks& links() const noexcept { return links_; }
  std::size_t rows() const noexcept { return std::size_t{1} << (params_.k + 1); }
  std::span<const double> table_values() const noexcept { return values_; }

  std::span<const double> row(std::size_t bit, std::size_t pattern) const noexcept {
    const auto m = static_cast<std::size_t>(params_.m);
    return {values_.data() + (bit * rows() + pattern) * m, m};
  }

  /// Components whose lookup pattern reads bit j (component j itself included), ascending.
  std::span<const int> dependents(std::size_t j) const noexcept { return dependents_[j]; }

  template <typename BitAt>
  std::size_t pattern_with(std::size_t i, BitAt&& bit_at) const {
    std::size_t p = bit_at(i) ? 1U : 0U;
    for (int j : links_[i]) p = (p << 1) | (bit_at(static_cast<std::size_t>(j)) ? 1U : 0U);
    return p;
  }

  std::size_t pattern(std::size_t i, const Solution& x) const {
    return pattern_with(i, [&x](std::size_t b) { return x[b]; });
  }

  std::size_t pattern(std::size_t i, std::uint64_t x) const {
    return pattern_with(i, [x](std::size_t b) { return ((x >> b) & 1U) != 0; });
  }

  /// f_m(x) = (1/N) * sum_i y^{m,i}[pattern(i, x)], summed in increasing i.
  void evaluate_into(const Solution& x, std::span<double> out) const {
    if (x.size() != static_cast<std::size_t>(params_.n))
      throw LengthMismatch(static_cast<std::size_t>(params_.n), x.size());
    accumulate(out, [&](std::size_t i) { return pattern(i, x); });
  }

  void evaluate_into(std::uint64_t x, std::span<double> out) const {
    accumulate(out, [&](std::size_t i) { return pattern(i, x); });
  }

  ObjectiveVector evaluate(const Solution& x) const {
    ObjectiveVector out(static_cast<std::size_t>(params_.m));
    evaluate_into(x, out);
    return out;
  }

  ObjectiveVector evaluate(std::uint64_t x) const {
    ObjectiveVector out(static_cast<std::size_t>(params_.m));
    evaluate_into(x, out);
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.params_ == b.params_ && a.links_ == b.links_ && a.values_ == b.values_;
  }

 private:
  template <typename PatternOf>
  void accumulate(std::span<double> out, PatternOf&& pattern_of) const {
    const auto m = static_cast<std::size_t>(params_.m);
    if (out.size() != m) throw LengthMismatch(m, out.size());
    std::fill(out.begin(), out.end(), 0.0);
    const auto n = static_cast<std::size_t>(params_.n);
    for (std::size_t i = 0; i < n; ++i) {
      const double* y = values_.data() + (i * rows() + pattern_of(i)) * m;
      for (std::size_t o = 0; o < m; ++o) out[o] += y[o];
    }
    const double inv_n = 1.0 / static_cast<double>(params_.n);
    for (double& v : out) v *= inv_n;
  }

  LandscapeParams params_;
  EpistasisLinks links_;
  std::vector<double> values_;
  std::vector<std::vector<int>> dependents_;
};

/// K distinct links per bit, uniform without replacement from {0..n-1}\{i},
/// via partial Fisher-Yates.
inline EpistasisLinks sample_links(int n, int k, RandomStream& rng) {
  EpistasisLinks links(static_cast<std::size_t>(n));
  std::vector<int> pool;
  for (int i = 0; i < n; ++i) {
    pool.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) pool.push_back(j);
    auto& row = links[static_cast<std::size_t>(i)];
    for (int a = 0; a < k; ++a) {
      const std::size_t pick = static_cast<std::size_t>(a) + uniform_index(rng, pool.size() - static_cast<std::size_t>(a));
      std::swap(pool[static_cast<std::size_t>(a)], pool[pick]);
      row.push_back(pool[static_cast<std::size_t>(a)]);
    }
  }
  return links;
}

/// Deterministic in (n, k, m, rho, seed). Links and tables come from separate
/// substreams of `seed`.
inline Instance generate_instance(const LandscapeParams& params) {
  validate_params(params);
  const CopulaSampler sampler(CorrelationMatrix(params.m, params.rho));

  RandomStream link_rng = make_stream(derive_seed(params.seed, "links"));
  EpistasisLinks links = sample_links(params.n, params.k, link_rng);

  RandomStream table_rng = make_stream(derive_seed(params.seed, "tables"));
  const auto m = static_cast<std::size_t>(params.m);
  const std::size_t total_rows = static_cast<std::size_t>(params.n) << (params.k + 1);
  std::vector<double> values(total_rows * m);
  for (std::size_t r = 0; r < total_rows; ++r)
    sampler.draw(table_rng, std::span<double>(values.data() + r * m, m));

  return Instance(params, std::move(links), std::move(values));
}

inline Instance generate_instance(int n, int k, int m, double rho, std::uint64_t seed) {
  return generate_instance(LandscapeParams{n, k, m, rho, seed});
}

inline Solution random_solution(std::size_t n, RandomStream& rng) {
  Solution s(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    s.set(i, ((word >> (i % 64)) & 1U) != 0);
  }
  return s;
}

}  // namespace rmnk
