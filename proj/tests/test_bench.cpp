#include <gtest/gtest.h>

#include <atomic>

#include "symlra/bench.hpp"

using namespace symlra;
using namespace symlra::bench;

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> v{4, 1, 3, 2, 5};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 2.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(quantile({1, 2}, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.25), 1.75);
  EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
}

TEST(Summary, OrderedQuartiles) {
  const Summary s = summarize({0.3, 0.1, 0.9, 0.5, 0.7, 0.2});
  EXPECT_LE(s.min, s.q25);
  EXPECT_LE(s.q25, s.q50);
  EXPECT_LE(s.q50, s.q75);
  EXPECT_LE(s.q75, s.max);
  EXPECT_DOUBLE_EQ(s.min, 0.1);
  EXPECT_DOUBLE_EQ(s.max, 0.9);
}

TEST(TrialSeed, DistinctAndStable) {
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(7, 4));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(RunTable, SmallScaleIsDeterministicAcrossThreads) {
  BenchConfig one;
  BenchConfig four;
  four.threads = 4;
  const auto a = run_table(5, 3, 2, 1e-2, 6, 11, one);
  const auto b = run_table(5, 3, 2, 1e-2, 6, 11, four);
  EXPECT_EQ(a.err_opt, b.err_opt);
  EXPECT_EQ(a.err_gp, b.err_gp);
  EXPECT_EQ(a.failures, 0);
  for (double e : a.err_opt) EXPECT_LE(e, 1.05);
  for (std::size_t i = 0; i < a.err_opt.size(); ++i) EXPECT_LE(a.err_opt[i], a.err_gp[i] * (1 + 1e-12));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_FALSE(to_json(a).contains("mean_seconds"));
  EXPECT_FALSE(to_table(a).empty());
}

TEST(DecompositionTable, ExactInstancesSucceed) {
  const auto stats = run_decomposition_table({{5, 3, 3}, {3, 4, 5}}, 4, 3);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].successes, 4);
  EXPECT_FALSE(stats[0].has_omega);
  EXPECT_TRUE(stats[1].has_omega);
  EXPECT_EQ(stats[1].relative_residuals.size(), 4u);
}

TEST(NlsComparison, PairedTrialShapes) {
  const auto cmp = run_nls_comparison(4, 3, 3, 1e-3, 3, 2, 5);
  ASSERT_EQ(cmp.trials.size(), 3u);
  EXPECT_NEAR(cmp.tau, std::pow(1000.0, 1.0 / 3.0), 1e-12);
  EXPECT_EQ(cmp.ratio_order_stats.size(), 5u);
  for (std::size_t k = 1; k < cmp.ratio_order_stats.size(); ++k)
    EXPECT_LE(cmp.ratio_order_stats[k - 1], cmp.ratio_order_stats[k]);
  for (const auto& t : cmp.trials) {
    EXPECT_FALSE(t.failed);
    EXPECT_NEAR(t.ratio, t.err_nls / t.err_opt, 1e-12 * t.ratio);
  }
}
