#include "photon/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "photon/error.hpp"

namespace photon {
namespace {

const QVector kWorked({0.5, 0.25}, 0.1);

EmpiricalDistribution tallies(std::vector<std::uint64_t> counts) {
  EmpiricalDistribution e;
  for (auto c : counts) e.trials += c;
  e.counts = std::move(counts);
  return e;
}

TEST(SummarizeTest, PointMass) {
  const SummaryStats s = summarize(CountDistribution{{0, 0, 0, 1}});
  EXPECT_EQ(s.mean, 3.0);
  EXPECT_EQ(s.variance, 0.0);
  ASSERT_TRUE(s.fano.has_value());
  EXPECT_EQ(*s.fano, 0.0);
  EXPECT_EQ(*s.mandel_q, -1.0);
}

TEST(SummarizeTest, WorkedBinomial) {
  const SummaryStats s = summarize(m_of_k_distribution(0.0375, 2));
  EXPECT_NEAR(s.mean, 0.075, 1e-15);
  EXPECT_NEAR(s.variance, 0.0721875, 1e-15);
  EXPECT_NEAR(*s.fano, 0.9625, 1e-14);
  EXPECT_NEAR(*s.mandel_q, -0.0375, 1e-14);
}

TEST(SummarizeTest, ZeroMeanHasUndefinedFano) {
  const SummaryStats s = summarize(tallies({1000, 0, 0}));
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_FALSE(s.fano.has_value());
  EXPECT_FALSE(s.mandel_q.has_value());
  EXPECT_THROW(summarize(CountDistribution{}), Error);
  EXPECT_THROW(summarize(EmpiricalDistribution{}), Error);
}

TEST(SummarizeTest, EmpiricalMoments) {
  const SummaryStats s = summarize(tallies({1, 2, 1}));
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_DOUBLE_EQ(s.variance, 0.5);
}

TEST(SummarizeTest, BinomialFanoIsOneMinusP) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 200; ++i) {
    const double p = u(rng);
    const std::uint64_t k = 1 + rng() % 60;
    EXPECT_NEAR(*summarize(binomial_distribution(k, p)).fano, 1.0 - p, 1e-12);
  }
}

TEST(WilsonIntervalTest, Examples) {
  EXPECT_EQ(wilson_interval(0, 100, 1.96).lo, 0.0);
  const Interval half = wilson_interval(50, 100, 1.96);
  EXPECT_NEAR(half.lo + half.hi, 1.0, 1e-15);
  EXPECT_LT(half.lo, 0.5);
  EXPECT_GT(half.hi, 0.5);
  const Interval worked = wilson_interval(37500, 1'000'000, 3.0);
  EXPECT_LT(worked.lo, 0.0375);
  EXPECT_GT(worked.hi, 0.0375);
  EXPECT_EQ(wilson_interval(100, 100, 1.96).hi, 1.0);
}

TEST(WilsonIntervalTest, Preconditions) {
  EXPECT_THROW(wilson_interval(1, 0, 1.96), Error);
  EXPECT_THROW(wilson_interval(5, 4, 1.96), Error);
  EXPECT_THROW(wilson_interval(1, 4, 0.0), Error);
}

TEST(WilsonIntervalTest, ContainsPointEstimate) {
  for (std::uint64_t n : {1u, 7u, 100u}) {
    for (std::uint64_t x = 0; x <= n; ++x) {
      const Interval ci = wilson_interval(x, n, 1.96);
      const double p = static_cast<double>(x) / n;
      EXPECT_LE(ci.lo, p);
      EXPECT_GE(ci.hi, p);
    }
  }
}

TEST(WilsonIntervalTest, NominalCoverage) {
  std::mt19937_64 rng(12345);
  const double p = 0.3;
  const std::uint64_t n = 1000;
  std::binomial_distribution<std::uint64_t> draw(n, p);
  int covered = 0;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) {
    const Interval ci = wilson_interval(draw(rng), n, 1.959963984540054);
    if (ci.lo <= p && p <= ci.hi) ++covered;
  }
  const double coverage = static_cast<double>(covered) / reps;
  EXPECT_GE(coverage, 0.94);
  EXPECT_LE(coverage, 0.96);
}

TEST(CompareToAnalyticTest, SelfConsistency) {
  const auto analytic = bunched_detected_distribution(kWorked, 3);
  int passes = 0;
  const int runs = 100;
  for (int seed = 1; seed <= runs; ++seed) {
    const auto mc = run_experiment(ExperimentConfig{
        kWorked, EmissionMode::kBunched, 3, 100000,
        static_cast<std::uint64_t>(seed), 0});
    if (compare_to_analytic(mc.detected, analytic, 4.0).pass) ++passes;
  }
  EXPECT_GE(passes, 99);
}

TEST(CompareToAnalyticTest, WrongModelRejected) {
  const auto mc = run_experiment(
      ExperimentConfig{kWorked, EmissionMode::kSeparate, 2, 1'000'000, 42, 0});
  const auto wrong =
      m_of_k_distribution(detect_probability_product(QVector({0, 0}, 0.1)), 2);
  const auto report = compare_to_analytic(mc.detected, wrong, 4.0);
  EXPECT_FALSE(report.pass);
  EXPECT_LT(report.p_value, 1e-12);
}

TEST(CompareToAnalyticTest, ReportsPerCellScores) {
  const auto mc = run_experiment(
      ExperimentConfig{kWorked, EmissionMode::kSeparate, 2, 1'000'000, 42, 0});
  const auto report =
      compare_to_analytic(mc.detected, m_of_k_distribution(0.0375, 2), 4.0);
  ASSERT_EQ(report.cells.size(), 3u);
  EXPECT_NEAR(report.cells[0].expected, 0.92640625, 1e-15);
  EXPECT_NEAR(report.cells[1].expected, 0.0721875, 1e-15);
  EXPECT_NEAR(report.cells[2].expected, 0.00140625, 1e-15);
  EXPECT_EQ(report.degrees_of_freedom, 2u);
  EXPECT_TRUE(report.pass);
  for (const auto& cell : report.cells) EXPECT_LE(std::abs(cell.z), 4.0);
}

TEST(CompareToAnalyticTest, PoolsSmallCells) {
  // Expected tallies 90, 9.9, 0.1: the last two share one pooled cell.
  const auto report = compare_to_analytic(
      tallies({90, 10, 0}), CountDistribution{{0.9, 0.099, 0.001}}, 4.0);
  EXPECT_EQ(report.degrees_of_freedom, 1u);
  EXPECT_NEAR(report.chi_square, 0.0, 1e-12);

  // Everything below 5: one pooled cell, no degrees of freedom.
  const auto tiny = compare_to_analytic(tallies({2, 1}),
                                        CountDistribution{{0.5, 0.5}}, 4.0);
  EXPECT_EQ(tiny.degrees_of_freedom, 0u);
  EXPECT_TRUE(std::isnan(tiny.p_value));
}

TEST(CompareToAnalyticTest, ImpossibleCellFails) {
  const auto report = compare_to_analytic(tallies({99, 1}),
                                          CountDistribution{{1.0, 0.0}}, 4.0);
  EXPECT_FALSE(report.pass);
  EXPECT_TRUE(std::isinf(report.max_abs_z));
}

TEST(CompareToAnalyticTest, MismatchedSupport) {
  try {
    compare_to_analytic(tallies({5, 5}), CountDistribution{{0.2, 0.3, 0.5}}, 4.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMismatchedSupport);
  }
}

TEST(BunchingAmplificationTest, WorkedScenario) {
  const auto sep = m_of_k_distribution(detect_probability_product(kWorked), 3);
  const auto bun = bunched_detected_distribution(kWorked, 3);
  const Amplification a = bunching_amplification(sep, bun, 1);
  ASSERT_TRUE(a.ratio.has_value());
  EXPECT_NEAR(*a.ratio, 0.159818359375 / 0.108333984375, 1e-12);
  EXPECT_NEAR(*a.ratio, 1.4753, 1e-4);
}

TEST(BunchingAmplificationTest, VacuumIsOne) {
  const QVector qv({}, 0.4);
  const Amplification a = bunching_amplification(
      m_of_k_distribution(0.4, 3), bunched_detected_distribution(qv, 3), 1);
  EXPECT_NEAR(*a.ratio, 1.0, 1e-14);
}

TEST(BunchingAmplificationTest, PerfectAbsorbersLeaveDenominatorZero) {
  const QVector qv({1.0, 1.0, 1.0}, 0.5);
  const Amplification a = bunching_amplification(
      m_of_k_distribution(detect_probability_product(qv), 4),
      bunched_detected_distribution(qv, 4), 1);
  EXPECT_FALSE(a.ratio.has_value());
  EXPECT_EQ(a.denominator, 0.0);
  EXPECT_DOUBLE_EQ(a.numerator, 0.5);
}

TEST(BunchingAmplificationTest, EmpiricalAndPreconditions) {
  const Amplification a =
      bunching_amplification(tallies({50, 50}), tallies({20, 80}), 1);
  EXPECT_DOUBLE_EQ(*a.ratio, 1.6);
  EXPECT_THROW(bunching_amplification(tallies({50, 50}), tallies({20, 80}), 0),
               Error);
  EXPECT_THROW(
      bunching_amplification(tallies({50, 50}), tallies({20, 70, 10}), 1),
      Error);
}

}  // namespace
}  // namespace photon
