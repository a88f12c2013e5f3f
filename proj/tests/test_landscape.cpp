#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmnk/experiments.hpp"
#include "rmnk/landscape.hpp"

using namespace rmnk;

namespace {

// N=3, K=1, M=2; links 0<-2, 1<-0, 2<-1.
Instance hand_built() {
  EpistasisLinks links{{2}, {0}, {1}};
  std::vector<double> v{
      0.1, 0.9, 0.2, 0.8, 0.3, 0.7, 0.4, 0.6,      // bit 0, rows 0..3
      0.5, 0.5, 0.25, 0.75, 0.125, 0.0, 0.0, 0.5,  // bit 1
      0.05, 0.15, 0.35, 0.45, 0.55, 0.65, 0.95, 0.85,  // bit 2
  };
  return Instance(LandscapeParams{3, 1, 2, 0.0, 0}, std::move(links), std::move(v));
}

}  // namespace

TEST(Solution, IndexAndStringAgree) {
  const auto x = Solution::from_string("1011");
  EXPECT_EQ(x.to_index(), 1u + 4u + 8u);
  EXPECT_EQ(Solution::from_index(13, 4), x);
  EXPECT_EQ(x.to_string(), "1011");
  EXPECT_EQ(hamming_distance(x, Solution::from_string("0100")), 4u);
  EXPECT_EQ(x.flipped(1).to_string(), "1111");
  EXPECT_THROW(Solution::from_string("10a1"), Error);
}

TEST(GenerateInstance, ShapesAndLinks) {
  const auto inst = generate_instance(18, 4, 3, 0.2, 1);
  EXPECT_EQ(inst.rows(), 32u);
  EXPECT_EQ(inst.table_values().size(), 18u * 32u * 3u);
  EXPECT_EQ(inst.links().size(), 18u);
  for (std::size_t i = 0; i < 18; ++i) {
    const auto& row = inst.links()[i];
    ASSERT_EQ(row.size(), 4u);
    std::set<int> distinct(row.begin(), row.end());
    EXPECT_EQ(distinct.size(), 4u);
    EXPECT_EQ(distinct.count(static_cast<int>(i)), 0u);
    for (int j : row) EXPECT_TRUE(j >= 0 && j < 18);
  }
  for (double v : inst.table_values()) EXPECT_TRUE(v >= 0.0 && v < 1.0);
}

TEST(GenerateInstance, DeterministicInSeed) {
  EXPECT_TRUE(generate_instance(12, 3, 2, 0.4, 77) == generate_instance(12, 3, 2, 0.4, 77));
  EXPECT_FALSE(generate_instance(12, 3, 2, 0.4, 77) == generate_instance(12, 3, 2, 0.4, 78));
}

TEST(GenerateInstance, RejectsBadParameters) {
  EXPECT_THROW(generate_instance(5, 5, 2, 0.0, 1), InvalidK);
  EXPECT_THROW(generate_instance(5, -1, 2, 0.0, 1), InvalidK);
  EXPECT_THROW(generate_instance(8, 2, 5, -0.4, 1), RhoOutOfRange);
  EXPECT_THROW(generate_instance(0, 0, 2, 0.0, 1), InvalidParameter);
}

TEST(GenerateInstance, TableColumnsCarryTargetCorrelation) {
  const auto inst = generate_instance(18, 4, 2, 0.9, 3);
  std::vector<double> a, b;
  const auto v = inst.table_values();
  for (std::size_t r = 0; r < v.size() / 2; ++r) {
    a.push_back(v[2 * r]);
    b.push_back(v[2 * r + 1]);
  }
  EXPECT_NEAR(oracle::pearson(a, b), 0.9, 0.05);
}

TEST(GenerateInstance, PerfectCorrelationGivesIdenticalColumns) {
  const auto inst = generate_instance(10, 2, 3, 1.0, 4);
  const auto v = inst.table_values();
  for (std::size_t r = 0; r < v.size() / 3; ++r) {
    EXPECT_NEAR(v[3 * r], v[3 * r + 1], 1e-12);
    EXPECT_NEAR(v[3 * r], v[3 * r + 2], 1e-12);
  }
}

TEST(Evaluate, HandBuiltInstance) {
  const auto inst = hand_built();
  const auto f101 = inst.evaluate(Solution::from_string("101"));
  EXPECT_NEAR(f101[0], (0.4 + 0.25 + 0.55) / 3.0, 1e-15);
  EXPECT_NEAR(f101[1], (0.6 + 0.75 + 0.65) / 3.0, 1e-15);
  const auto f011 = inst.evaluate(Solution::from_string("011"));
  EXPECT_NEAR(f011[0], (0.2 + 0.125 + 0.95) / 3.0, 1e-15);
  EXPECT_NEAR(f011[1], (0.8 + 0.0 + 0.85) / 3.0, 1e-15);
  const auto f000 = inst.evaluate(Solution::from_string("000"));
  EXPECT_NEAR(f000[0], (0.1 + 0.5 + 0.05) / 3.0, 1e-15);
  EXPECT_NEAR(f000[1], (0.9 + 0.5 + 0.15) / 3.0, 1e-15);
}

TEST(Evaluate, MatchesOracleOnEveryPoint) {
  const auto inst = generate_instance(9, 3, 3, -0.3, 21);
  for (std::uint64_t x = 0; x < 512; ++x) {
    const auto expect = oracle::evaluate(inst, x);
    const auto by_index = inst.evaluate(x);
    const auto by_solution = inst.evaluate(Solution::from_index(x, 9));
    for (std::size_t o = 0; o < 3; ++o) {
      EXPECT_NEAR(by_index[o], expect[o], 1e-15);
      EXPECT_EQ(by_index[o], by_solution[o]);
    }
  }
}

TEST(Evaluate, ObjectivesLieInUnitInterval) {
  const auto inst = generate_instance(40, 6, 2, -0.7, 8);
  auto rng = make_stream(1);
  for (int s = 0; s < 500; ++s)
    for (double v : inst.evaluate(random_solution(40, rng))) EXPECT_TRUE(v >= 0.0 && v < 1.0);
}

TEST(Evaluate, LengthMismatchThrows) {
  const auto inst = generate_instance(6, 1, 2, 0.0, 1);
  EXPECT_THROW(inst.evaluate(Solution::from_string("0101")), LengthMismatch);
}

TEST(Instance, RejectsInvalidTables) {
  EpistasisLinks self{{0}, {0}};
  EXPECT_THROW(Instance(LandscapeParams{2, 1, 2, 0.0, 0}, self, std::vector<double>(16, 0.5)), InvalidParameter);
  EpistasisLinks ok{{1}, {0}};
  EXPECT_THROW(Instance(LandscapeParams{2, 1, 2, 0.0, 0}, ok, std::vector<double>(15, 0.5)), InvalidParameter);
  EXPECT_THROW(Instance(LandscapeParams{2, 1, 2, 0.0, 0}, ok, std::vector<double>(16, 1.0)), InvalidParameter);
}

TEST(RandomSolution, BitsAreFair) {
  auto rng = make_stream(42);
  const std::size_t n = 100;
  const int samples = 20000;
  std::vector<int> ones(n, 0);
  for (int s = 0; s < samples; ++s) {
    const auto x = random_solution(n, rng);
    for (std::size_t i = 0; i < n; ++i) ones[i] += x[i] ? 1 : 0;
  }
  // binomial sd at p = 1/2 is 0.0035; 5 sd bound
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ones[i] / static_cast<double>(samples), 0.5, 0.018) << i;
}

TEST(ObjectiveCorrelation, InstanceAverageMatchesTarget) {
  // per-instance values scatter, the expectation over instances equals rho
  for (const auto& [m, rho] : std::vector<std::pair<int, double>>{{2, 0.0}, {3, -0.4}, {2, 0.7}}) {
    double sum = 0.0;
    const int instances = 40;
    for (int s = 0; s < instances; ++s) {
      const auto inst = generate_instance(18, 4, m, rho, 1000 + static_cast<std::uint64_t>(s));
      auto rng = make_stream(derive_seed(inst.seed(), "correlation"));
      sum += mean_off_diagonal(empirical_objective_correlation(inst, 2000, rng));
    }
    EXPECT_NEAR(sum / instances, rho, 0.04) << "M=" << m << " rho=" << rho;
  }
}

TEST(ObjectiveCorrelation, StrongCorrelationHoldsPerInstance) {
  const auto inst = generate_instance(18, 4, 2, 0.9, 5);
  auto rng = make_stream(6);
  EXPECT_NEAR(empirical_objective_correlation(inst, 10000, rng)(0, 1), 0.9, 0.05);
}
