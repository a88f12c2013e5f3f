#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmnk/correlated_sampling.hpp"

using namespace rmnk;

namespace {

double sample_correlation(const CopulaSampler& s, std::size_t draws, std::uint64_t seed, int a, int b) {
  auto rng = make_stream(seed);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto v = s.draw(rng);
    xs.push_back(v[static_cast<std::size_t>(a)]);
    ys.push_back(v[static_cast<std::size_t>(b)]);
  }
  return oracle::pearson(xs, ys);
}

}  // namespace

TEST(ValidateRho, AdmissibleBounds) {
  EXPECT_NO_THROW(validate_rho(2, -1.0));
  EXPECT_NO_THROW(validate_rho(3, -0.5));
  EXPECT_NO_THROW(validate_rho(5, -0.25));
  EXPECT_NO_THROW(validate_rho(5, 1.0));
  EXPECT_THROW(validate_rho(3, -0.6), RhoOutOfRange);
  EXPECT_THROW(validate_rho(5, -0.4), RhoOutOfRange);
  EXPECT_THROW(validate_rho(2, 1.01), RhoOutOfRange);
  EXPECT_THROW(validate_rho(2, -1.01), RhoOutOfRange);
}

TEST(ValidateRho, ErrorCarriesInterval) {
  try {
    validate_rho(5, -0.4);
    FAIL();
  } catch (const RhoOutOfRange& e) {
    EXPECT_DOUBLE_EQ(e.rho(), -0.4);
    EXPECT_DOUBLE_EQ(e.lower(), -0.25);
    EXPECT_DOUBLE_EQ(e.upper(), 1.0);
  }
}

TEST(CopulaAdjustment, KnownValues) {
  EXPECT_DOUBLE_EQ(copula_adjusted_correlation(0.0), 0.0);
  EXPECT_NEAR(copula_adjusted_correlation(1.0), 1.0, 1e-15);
  EXPECT_NEAR(copula_adjusted_correlation(0.5), 2.0 * std::sin(std::numbers::pi / 12.0), 1e-15);
  EXPECT_NEAR(copula_adjusted_correlation(0.5), 0.517638, 1e-6);
  EXPECT_NEAR(copula_adjusted_correlation(-0.4), -copula_adjusted_correlation(0.4), 1e-15);
}

TEST(CopulaAdjustment, BoundaryForThreeObjectivesIsNotSemidefinite) {
  // the adjusted value -2 sin(pi/12) < -0.5 leaves a negative eigenvalue
  EXPECT_THROW(adjust_for_copula(CorrelationMatrix(3, -0.5)), NotPositiveSemidefinite);
  EXPECT_NO_THROW(adjust_for_copula(CorrelationMatrix(3, -0.4)));
  EXPECT_NO_THROW(adjust_for_copula(CorrelationMatrix(2, -1.0)));
}

TEST(CopulaSampler, FactorExamples) {
  const CopulaSampler indep(CorrelationMatrix(2, 0.0));
  EXPECT_TRUE(indep.gaussian_factor().isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-15));

  const CopulaSampler full(CorrelationMatrix(2, 1.0));
  const auto& l = full.gaussian_factor();
  EXPECT_NEAR(l(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(l(1, 0), 1.0, 1e-12);
  EXPECT_NEAR(l(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(l(1, 1), 0.0, 1e-6);

  const CorrelationMatrix c(3, -0.4);
  const CopulaSampler s(c);
  const Eigen::MatrixXd back = s.gaussian_factor() * s.gaussian_factor().transpose();
  EXPECT_LT((back - adjust_for_copula(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CopulaSampler, DrawsLieInUnitInterval) {
  for (double rho : {-1.0, 0.0, 0.7, 1.0}) {
    const CopulaSampler s(CorrelationMatrix(2, rho));
    auto rng = make_stream(11);
    for (int i = 0; i < 20000; ++i)
      for (double v : s.draw(rng)) {
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 1.0);
      }
  }
}

TEST(CopulaSampler, EmpiricalCorrelationMatchesTarget) {
  EXPECT_NEAR(sample_correlation(CopulaSampler(CorrelationMatrix(2, 0.0)), 100000, 5, 0, 1), 0.0, 0.02);
  EXPECT_NEAR(sample_correlation(CopulaSampler(CorrelationMatrix(2, 0.9)), 100000, 6, 0, 1), 0.9, 0.02);
  EXPECT_NEAR(sample_correlation(CopulaSampler(CorrelationMatrix(2, -0.7)), 100000, 7, 0, 1), -0.7, 0.02);
  const CopulaSampler five(CorrelationMatrix(5, -0.2));
  EXPECT_NEAR(sample_correlation(five, 100000, 8, 1, 4), -0.2, 0.02);
  EXPECT_NEAR(sample_correlation(five, 100000, 8, 0, 2), -0.2, 0.02);
}

TEST(CopulaSampler, MarginalsAreUniform) {
  // Kolmogorov-Smirnov against U(0,1); critical value at alpha = 0.01 is 1.628/sqrt(n)
  const std::size_t n = 10000;
  const CopulaSampler s(CorrelationMatrix(3, 0.4));
  auto rng = make_stream(99);
  for (std::size_t comp = 0; comp < 3; ++comp) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(s.draw(rng)[comp]);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n;
      d = std::max({d, xs[i] - lo, hi - xs[i]});
    }
    EXPECT_LT(d, 1.628 / std::sqrt(static_cast<double>(n))) << "component " << comp;
  }
}

TEST(CopulaSampler, SameSeedSameDraws) {
  const CopulaSampler s(CorrelationMatrix(3, 0.2));
  auto a = make_stream(1234);
  auto b = make_stream(1234);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s.draw(a), s.draw(b));
}

TEST(NormalCdf, ReferenceValues) {
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.0), 0.8413447460685429, 1e-12);
  EXPECT_NEAR(normal_cdf(-1.959963984540054), 0.025, 1e-12);
  EXPECT_NEAR(normal_cdf(-8.0), 6.22096057427178e-16, 1e-20);
}
