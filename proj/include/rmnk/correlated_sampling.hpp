#pragma once

// Correlated uniform vectors through a Gaussian copula.
//
// A standard normal vector with correlation r maps, through the normal CDF, to
// uniforms whose Pearson correlation is (6/pi)*asin(r/2). Inverting that gives
// the adjustment r = 2*sin(pi*rho/6) applied to every off-diagonal entry.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rmnk/errors.hpp"
#include "rmnk/rng.hpp"

namespace rmnk {

inline constexpr double kPsdTolerance = 1e-9;

/// Lower bound of the admissible correlation for m equicorrelated objectives.
inline double min_admissible_rho(int m) { return -1.0 / static_cast<double>(m - 1); }

inline bool is_admissible_rho(int m, double rho) {
  if (m < 2 || !std::isfinite(rho)) return false;
  // Grid values are decimal literals, so -1/(m-1) may arrive with one ulp of noise.
  return rho >= min_admissible_rho(m) - 1e-12 && rho <= 1.0;
}

/// Throws RhoOutOfRange unless -1/(m-1) <= rho <= 1.
inline void validate_rho(int m, double rho) {
  if (m < 2) throw InvalidParameter("objective count M must be at least 2");
  if (!is_admissible_rho(m, rho)) throw RhoOutOfRange(rho, min_admissible_rho(m), 1.0);
}

/// The matrix C_rho: unit diagonal, every off-diagonal entry equal to rho.
class CorrelationMatrix {
 public:
  CorrelationMatrix(int m, double rho) : m_(m), rho_(rho) { validate_rho(m, rho); }

  int m() const noexcept { return m_; }
  double rho() const noexcept { return rho_; }
  double operator()(int row, int col) const noexcept { return row == col ? 1.0 : rho_; }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(m_, m_, rho_);
    c.diagonal().setOnes();
    return c;
  }

 private:
  int m_;
  double rho_;
};

inline double copula_adjusted_correlation(double rho) {
  return 2.0 * std::sin(std::numbers::pi * rho / 6.0);
}

/// Gaussian-space correlation matrix whose image under the normal CDF has
/// Pearson correlation matrix `c`.
inline Eigen::MatrixXd adjust_for_copula(const CorrelationMatrix& c) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(c.m(), c.m(), copula_adjusted_correlation(c.rho()));
  r.diagonal().setOnes();
  const double min_eigen = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
  if (min_eigen < -kPsdTolerance) throw NotPositiveSemidefinite(min_eigen);
  return r;
}

/// Standard normal CDF, erfc-based (absolute error well below 1e-15).
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace detail {

// Cholesky that tolerates zero pivots; valid for positive semidefinite input.
// A pivot within tolerance of zero gets an all-zero column, which is the
// lower-triangular factor of the singular (rank-deficient) matrix.
inline Eigen::MatrixXd semidefinite_cholesky(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double d = a(j, j);
    for (Eigen::Index p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
    if (d <= kPsdTolerance) continue;
    const double pivot = std::sqrt(d);
    l(j, j) = pivot;
    for (Eigen::Index i = j + 1; i < m; ++i) {
      double s = a(i, j);
      for (Eigen::Index p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / pivot;
    }
  }
  return l;
}

}  // namespace detail

/// Immutable after construction; share freely, but give each consumer its own stream.
class CopulaSampler {
 public:
  explicit CopulaSampler(const CorrelationMatrix& c)
      : factor_(detail::semidefinite_cholesky(adjust_for_copula(c))) {}

  int dimension() const noexcept { return static_cast<int>(factor_.rows()); }

  /// Lower-triangular L with L * L^T equal to the copula-adjusted matrix.
  const Eigen::MatrixXd& gaussian_factor() const noexcept { return factor_; }

  /// Writes one correlated vector into `out` (size m), every component in [0,1).
  void draw(RandomStream& rng, std::span<double> out) const {
    const Eigen::Index m = factor_.rows();
    if (static_cast<Eigen::Index>(out.size()) != m)
      throw LengthMismatch(static_cast<std::size_t>(m), out.size());
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(m);
    for (Eigen::Index i = 0; i < m; ++i) z(i) = normal(rng);
    const Eigen::VectorXd y = factor_.triangularView<Eigen::Lower>() * z;
    constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    for (Eigen::Index i = 0; i < m; ++i)
      out[static_cast<std::size_t>(i)] = std::clamp(normal_cdf(y(i)), 0.0, kBelowOne);
  }

  std::vector<double> draw(RandomStream& rng) const {
    std::vector<double> out(static_cast<std::size_t>(factor_.rows()));
    draw(rng, out);
    return out;
  }

 private:
  Eigen::MatrixXd factor_;
};

inline CopulaSampler build_sampler(const CorrelationMatrix& c) { return CopulaSampler(c); }

}  // namespace rmnk
