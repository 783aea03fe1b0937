#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "photon/analytic.hpp"

// Brute-force ground truth for small instances. All arithmetic is exact
// rational: every finite double is a dyadic rational, so inputs convert
// without loss and nothing is rounded until to_doubles().

namespace photon::oracle {

inline constexpr std::uint64_t kMaxPhotons = 12;
inline constexpr std::size_t kMaxSeparateAbsorbers = 8;
inline constexpr std::size_t kMaxBunchedAbsorbers = 16;

struct ExactDistribution {
  std::vector<mpq_class> outcomes;  // indexed by count

  mpq_class total() const;
  mpq_class at_least(std::size_t m) const;
  CountDistribution to_doubles() const;
};

// Detected-count distribution of k independent photons. Each photon's fate
// (captured at shell 1..A, detected, or reached-but-missed) is enumerated
// along its path and the k photons are aggregated over all fate
// compositions with multinomial weights.
ExactDistribution enumerate_separate(const QVector& qv, std::uint64_t k);

struct BunchedEnumeration {
  ExactDistribution survivors;  // bunch size on arrival at the detector
  ExactDistribution detected;   // after the multiphoton detector readout
};

// Walks all 2^A capture/no-capture histories of a bunch of k photons.
BunchedEnumeration enumerate_bunched(const QVector& qv, std::uint64_t k);

struct CrossCheckReport {
  double tolerance = 0.0;
  double max_dev_separate = 0.0;
  double max_dev_survivors = 0.0;
  double max_dev_bunched_detected = 0.0;
  double max_dev_verdict = 0.0;
  bool totals_exact = false;
  bool pass = false;

  // Ordering evaluated from oracle values only.
  InequalityVerdict oracle_verdict;
  InequalityVerdict analytic_verdict;

  double max_deviation() const;
};

CrossCheckReport cross_check(const QVector& qv, std::uint64_t k, double tol);

}  // namespace photon::oracle
