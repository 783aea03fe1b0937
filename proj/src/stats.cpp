#include "photon/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "photon/error.hpp"

namespace photon {

namespace {

SummaryStats finish(double mean, double variance) {
  SummaryStats s;
  s.mean = mean;
  s.variance = std::max(0.0, variance);
  if (mean > 0.0) {
    s.fano = s.variance / mean;
    s.mandel_q = *s.fano - 1.0;
  }
  return s;
}

}  // namespace

SummaryStats summarize(const CountDistribution& dist) {
  if (dist.probabilities.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot summarize an empty distribution");
  }
  double mean = 0.0;
  for (std::size_t m = 0; m < dist.probabilities.size(); ++m) {
    mean += static_cast<double>(m) * dist.probabilities[m];
  }
  double var = 0.0;
  for (std::size_t m = 0; m < dist.probabilities.size(); ++m) {
    const double d = static_cast<double>(m) - mean;
    var += d * d * dist.probabilities[m];
  }
  return finish(mean, var);
}

SummaryStats summarize(const EmpiricalDistribution& dist) {
  if (dist.trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot summarize zero trials");
  }
  const double n = static_cast<double>(dist.trials);
  double mean = 0.0;
  for (std::size_t m = 0; m < dist.counts.size(); ++m) {
    mean += static_cast<double>(m) * static_cast<double>(dist.counts[m]);
  }
  mean /= n;
  double var = 0.0;
  for (std::size_t m = 0; m < dist.counts.size(); ++m) {
    const double d = static_cast<double>(m) - mean;
    var += d * d * static_cast<double>(dist.counts[m]);
  }
  var /= n;
  return finish(mean, var);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z) {
  if (trials == 0 || successes > trials || !(z > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "wilson_interval needs 0 <= successes <= trials, trials >= 1, z > 0");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) ci.lo = 0.0;
  if (successes == trials) ci.hi = 1.0;
  return ci;
}

ComparisonReport compare_to_analytic(const EmpiricalDistribution& empirical,
                                     const CountDistribution& analytic,
                                     double tol_z) {
  if (empirical.counts.size() != analytic.probabilities.size()) {
    throw Error(ErrorCode::kMismatchedSupport,
                "empirical support 0.." +
                    std::to_string(empirical.counts.size()) +
                    " vs analytic support 0.." +
                    std::to_string(analytic.probabilities.size()));
  }
  if (empirical.trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empirical distribution has no trials");
  }
  ComparisonReport r;
  r.tol_z = tol_z;
  const double n = static_cast<double>(empirical.trials);

  struct Cell {
    double observed;
    double expected;
  };
  std::vector<Cell> kept;
  Cell pooled{0.0, 0.0};

  for (std::size_t m = 0; m < empirical.counts.size(); ++m) {
    CellComparison c;
    c.count = m;
    c.observed = empirical.counts[m];
    c.expected = analytic.probabilities[m];
    c.empirical = static_cast<double>(c.observed) / n;
    const double mean = n * c.expected;
    const double sd = std::sqrt(n * c.expected * (1.0 - c.expected));
    const double diff = static_cast<double>(c.observed) - mean;
    if (sd > 0.0) {
      c.z = diff / sd;
    } else {
      c.z = diff == 0.0 ? 0.0 : std::copysign(
                                    std::numeric_limits<double>::infinity(),
                                    diff);
    }
    r.max_abs_deviation =
        std::max(r.max_abs_deviation, std::abs(c.empirical - c.expected));
    r.max_abs_z = std::max(r.max_abs_z, std::abs(c.z));
    r.cells.push_back(c);

    if (mean >= 5.0) {
      kept.push_back({static_cast<double>(c.observed), mean});
    } else {
      pooled.observed += static_cast<double>(c.observed);
      pooled.expected += mean;
    }
  }

  if (pooled.expected >= 5.0 || kept.empty()) {
    kept.push_back(pooled);
  } else if (pooled.expected > 0.0 || pooled.observed > 0.0) {
    auto smallest = std::min_element(
        kept.begin(), kept.end(),
        [](const Cell& a, const Cell& b) { return a.expected < b.expected; });
    smallest->observed += pooled.observed;
    smallest->expected += pooled.expected;
  }

  for (const Cell& c : kept) {
    if (c.expected > 0.0) {
      r.chi_square += (c.observed - c.expected) * (c.observed - c.expected) /
                      c.expected;
    } else if (c.observed > 0.0) {
      r.chi_square = std::numeric_limits<double>::infinity();
    }
  }
  r.degrees_of_freedom = kept.size() - 1;
  if (r.degrees_of_freedom == 0) {
    r.p_value = std::numeric_limits<double>::quiet_NaN();
  } else if (std::isinf(r.chi_square)) {
    r.p_value = 0.0;
  } else {
    const boost::math::chi_squared_distribution<double> chi2(
        static_cast<double>(r.degrees_of_freedom));
    r.p_value = boost::math::cdf(boost::math::complement(chi2, r.chi_square));
  }
  r.pass = r.max_abs_z <= tol_z;
  return r;
}

namespace {

Amplification ratio_of(double numerator, double denominator) {
  Amplification a{numerator, denominator, std::nullopt};
  if (denominator > 0.0) a.ratio = numerator / denominator;
  return a;
}

}  // namespace

Amplification bunching_amplification(const CountDistribution& separate,
                                     const CountDistribution& bunched,
                                     std::size_t m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  if (separate.probabilities.size() != bunched.probabilities.size()) {
    throw Error(ErrorCode::kMismatchedSupport,
                "separate and bunched distributions differ in K");
  }
  return ratio_of(bunched.at_least(m), separate.at_least(m));
}

Amplification bunching_amplification(const EmpiricalDistribution& separate,
                                     const EmpiricalDistribution& bunched,
                                     std::size_t m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  if (separate.counts.size() != bunched.counts.size()) {
    throw Error(ErrorCode::kMismatchedSupport,
                "separate and bunched distributions differ in K");
  }
  if (separate.trials == 0 || bunched.trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empirical distribution has no trials");
  }
  return ratio_of(static_cast<double>(bunched.at_least(m)) /
                      static_cast<double>(bunched.trials),
                  static_cast<double>(separate.at_least(m)) /
                      static_cast<double>(separate.trials));
}

}  // namespace photon
