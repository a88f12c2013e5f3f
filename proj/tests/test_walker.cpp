#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmnk/enumeration.hpp"
#include "rmnk/walker.hpp"

using namespace rmnk;

TEST(PhcWalk, StartingAtOptimumTakesNoStep) {
  const auto inst = oracle::chain_landscape();
  auto rng = make_stream(1);
  for (const char* s : {"001", "110", "101", "111"}) {
    const auto rec = phc_walk(inst, Solution::from_string(s), rng);
    EXPECT_EQ(rec.steps, 0u);
    EXPECT_EQ(rec.final.to_string(), s);
  }
}

TEST(PhcWalk, ForcedChainTakesTwoSteps) {
  const auto inst = oracle::chain_landscape();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = make_stream(seed);
    const auto rec = phc_walk(inst, Solution::from_string("000"), rng, true);
    EXPECT_EQ(rec.steps, 2u);
    ASSERT_TRUE(rec.path.has_value());
    ASSERT_EQ(rec.path->size(), 3u);
    EXPECT_EQ((*rec.path)[0].to_string(), "000");
    EXPECT_EQ((*rec.path)[1].to_string(), "100");
    EXPECT_EQ((*rec.path)[2].to_string(), "110");
    EXPECT_EQ(rec.final_objectives, inst.evaluate(rec.final));
  }
}

TEST(PhcWalk, PathsStrictlyImproveAndEndAtOptima) {
  for (const auto& [k, m, rho] : std::vector<std::tuple<int, int, double>>{{1, 2, -0.9}, {4, 3, 0.0}, {8, 5, 0.9}}) {
    const auto inst = generate_instance(16, k, m, rho, 40 + static_cast<std::uint64_t>(k));
    const auto plo = oracle::plo_set(inst);
    auto rng = make_stream(7);
    for (int w = 0; w < 200; ++w) {
      const auto rec = phc_walk(inst, random_solution(16, rng), rng, true);
      EXPECT_TRUE(plo.count(rec.final.to_index()));
      ASSERT_EQ(rec.path->size(), rec.steps + 1);
      for (std::size_t s = 1; s < rec.path->size(); ++s) {
        EXPECT_EQ(hamming_distance((*rec.path)[s - 1], (*rec.path)[s]), 1u);
        EXPECT_TRUE(oracle::better(oracle::evaluate(inst, (*rec.path)[s].to_index()),
                                   oracle::evaluate(inst, (*rec.path)[s - 1].to_index())));
      }
    }
  }
}

TEST(WalkCampaign, DeterministicAndThreadIndependent) {
  const auto inst = generate_instance(20, 4, 2, 0.0, 3);
  const auto a = walk_campaign(inst, 300, 99, 1, true);
  const auto b = walk_campaign(inst, 300, 99, 1, true);
  const auto c = walk_campaign(inst, 300, 99, 4, true);
  EXPECT_EQ(*a.lengths, *b.lengths);
  EXPECT_EQ(*a.lengths, *c.lengths);
  EXPECT_EQ(a.mean_length, c.mean_length);
  const auto d = walk_campaign(inst, 300, 100, 1, true);
  EXPECT_NE(*a.lengths, *d.lengths);
}

TEST(WalkCampaign, AllOptimaInstanceHasZeroLengths) {
  const EpistasisLinks links{{1}, {2}, {3}, {4}, {0}};
  const Instance inst(LandscapeParams{5, 1, 3, 0.0, 0}, links, std::vector<double>(5 * 4 * 3, 0.6));
  ASSERT_EQ(enumerate_plo(inst).n_plo, 32u);
  const auto s = walk_campaign(inst, 50, 1);
  EXPECT_EQ(s.mean_length, 0.0);
  EXPECT_EQ(s.sd_length, 0.0);
}

TEST(WalkCampaign, SummaryUsesSampleDeviation) {
  const auto s = summarize_lengths({1, 2, 3, 4}, true);
  EXPECT_DOUBLE_EQ(s.mean_length, 2.5);
  EXPECT_NEAR(s.sd_length, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(summarize_lengths({7}, false).sd_length, 0.0);
  EXPECT_THROW(walk_campaign(oracle::chain_landscape(), 0, 1), InvalidParameter);
}

TEST(EstimateLogPlo, AppliesFitLine) {
  RegressionFit fit;
  fit.a = -1.095;
  fit.b = 13.0;
  fit.model = FitModel::LinLog;
  EXPECT_NEAR(estimate_log_plo(4.0, fit), 13.0 - 4.38, 1e-12);
}
