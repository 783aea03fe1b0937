#include "photon/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

namespace photon {
namespace {

// Known-answer vectors published with the Random123 library.
TEST(PhiloxTest, KnownAnswers) {
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          {0xffffffff, 0xffffffff}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(TrialStreamTest, DeterministicPerIdentity) {
  TrialStream a(42, 7);
  TrialStream b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(TrialStreamTest, DistinctTrialsAndSeedsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      TrialStream s(seed, trial);
      firsts.insert(s());
    }
  }
  EXPECT_EQ(firsts.size(), 1000u);
}

TEST(TrialStreamTest, UniformMoments) {
  double sum = 0.0;
  double sum_sq = 0.0;
  const int n = 200000;
  for (int t = 0; t < n / 10; ++t) {
    TrialStream s(1, static_cast<std::uint64_t>(t));
    for (int i = 0; i < 10; ++i) {
      const double u = s.uniform();
      ASSERT_GE(u, 0.0);
      ASSERT_LT(u, 1.0);
      sum += u;
      sum_sq += u * u;
    }
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // 5 standard errors.
  EXPECT_NEAR(mean, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(var, 1.0 / 12.0, 2e-3);
}

}  // namespace
}  // namespace photon
