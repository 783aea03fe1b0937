#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "photon/analytic.hpp"
#include "photon/montecarlo.hpp"

namespace photon {

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;
  // Undefined (nullopt) when the mean is zero.
  std::optional<double> fano;
  std::optional<double> mandel_q;
};

SummaryStats summarize(const CountDistribution& dist);
SummaryStats summarize(const EmpiricalDistribution& dist);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z);

struct CellComparison {
  std::size_t count = 0;
  std::uint64_t observed = 0;
  double expected = 0.0;   // analytic probability
  double empirical = 0.0;  // observed / trials
  double z = 0.0;          // (observed - n p) / sqrt(n p (1 - p))
};

struct ComparisonReport {
  std::vector<CellComparison> cells;
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0.0;  // NaN when there are no degrees of freedom
  double max_abs_deviation = 0.0;
  double max_abs_z = 0.0;
  double tol_z = 0.0;
  bool pass = false;
  std::optional<InequalityVerdict> inequality;
};

// Per-count z-scores plus a Pearson chi-square in which cells expecting
// fewer than 5 trials are pooled. pass iff every |z| <= tol_z.
ComparisonReport compare_to_analytic(const EmpiricalDistribution& empirical,
                                     const CountDistribution& analytic,
                                     double tol_z);

struct Amplification {
  double numerator = 0.0;    // P_bunched(detected >= m)
  double denominator = 0.0;  // P_separate(detected >= m)
  std::optional<double> ratio;  // nullopt when the denominator is zero
};

Amplification bunching_amplification(const CountDistribution& separate,
                                     const CountDistribution& bunched,
                                     std::size_t m);
Amplification bunching_amplification(const EmpiricalDistribution& separate,
                                     const EmpiricalDistribution& bunched,
                                     std::size_t m);

}  // namespace photon
