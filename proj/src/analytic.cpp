#include "photon/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "photon/error.hpp"

namespace photon {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

// Largest k evaluated term by term; above it the mass is grown outward from
// the mode and normalised.
constexpr std::uint64_t kDirectBinomialLimit = 60;

// Below this q the complement 1 - (1-q)^s loses relative accuracy, so the
// log1p/expm1 route is used instead.
constexpr double kDirectPowerMinQ = 1.0 / 256.0;

bool direct_power(double q) {
  return q >= kDirectPowerMinQ && 1.0 - (1.0 - q) == q;
}

// Probability that a capacity-1 absorber with single-photon capture
// probability q lets a bunch of size s through untouched.
double pass_given_size(double q, std::uint64_t s) {
  if (s == 0 || q == 0.0) return 1.0;
  if (q == 1.0) return 0.0;
  const double sd = static_cast<double>(s);
  if (direct_power(q)) return std::pow(1.0 - q, sd);
  return std::exp(sd * std::log1p(-q));
}

// ... and removes exactly one photon from it.
double capture_given_size(double q, std::uint64_t s) {
  if (s == 0 || q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  if (direct_power(q)) return 1.0 - pass_given_size(q, s);
  return -std::expm1(static_cast<double>(s) * std::log1p(-q));
}

// Survivor mass restricted to [lo, k] where lo = max(0, k - shells).
struct SurvivorWindow {
  std::uint64_t lo = 0;
  std::vector<double> mass;  // mass[i] = P(S = lo + i)
};

SurvivorWindow initial_window(std::uint64_t k, std::size_t shells) {
  SurvivorWindow w;
  w.lo = k > shells ? k - shells : 0;
  w.mass.assign(static_cast<std::size_t>(k - w.lo) + 1, 0.0);
  w.mass.back() = 1.0;
  return w;
}

void cross_shell(SurvivorWindow& w, double q) {
  std::vector<double> next(w.mass.size(), 0.0);
  for (std::size_t i = 0; i < w.mass.size(); ++i) {
    const double m = w.mass[i];
    if (m == 0.0) continue;
    const std::uint64_t s = w.lo + i;
    const double captured = capture_given_size(q, s);
    next[i] += m * pass_given_size(q, s);
    if (captured > 0.0) next[i - 1] += m * captured;
  }
  w.mass = std::move(next);
}

SurvivorDistribution expand(const SurvivorWindow& w, std::uint64_t k) {
  SurvivorDistribution d;
  d.probabilities.assign(static_cast<std::size_t>(k) + 1, 0.0);
  std::copy(w.mass.begin(), w.mass.end(),
            d.probabilities.begin() + static_cast<std::ptrdiff_t>(w.lo));
  return d;
}

SurvivorWindow run_window(const QVector& qv, std::uint64_t k,
                          std::size_t shells) {
  SurvivorWindow w = initial_window(k, qv.absorber_count());
  for (std::size_t j = 0; j < shells; ++j) cross_shell(w, qv.absorbers()[j]);
  return w;
}

}  // namespace

QVector::QVector(std::vector<double> absorber_qs, double detector_q)
    : absorber_qs_(std::move(absorber_qs)), detector_q_(detector_q) {
  for (std::size_t i = 0; i < absorber_qs_.size(); ++i) {
    if (!is_probability(absorber_qs_[i])) {
      throw Error(ErrorCode::kOutOfRange,
                  "absorber q_" + std::to_string(i + 1) + " = " +
                      std::to_string(absorber_qs_[i]) + " is outside [0, 1]");
    }
  }
  if (!is_probability(detector_q_)) {
    throw Error(ErrorCode::kOutOfRange, "detector q_D = " +
                                            std::to_string(detector_q_) +
                                            " is outside [0, 1]");
  }
}

double CountDistribution::at_least(std::size_t m) const {
  double sum = 0.0;
  for (std::size_t i = probabilities.size(); i > m; --i) {
    sum += probabilities[i - 1];
  }
  return sum;
}

double CountDistribution::total() const { return at_least(0); }

double reach_probability(const QVector& qv, std::size_t index) {
  if (index < 1 || index > qv.absorber_count() + 1) {
    throw Error(ErrorCode::kOutOfRange,
                "reach index " + std::to_string(index) + " outside 1.." +
                    std::to_string(qv.absorber_count() + 1));
  }
  double reach = 1.0;
  for (std::size_t j = 1; j < index; ++j) reach *= 1.0 - qv.absorber(j);
  return reach;
}

double absorb_probability(const QVector& qv, std::size_t n) {
  if (n < 1 || n > qv.absorber_count()) {
    throw Error(ErrorCode::kOutOfRange,
                "absorber index " + std::to_string(n) + " outside 1.." +
                    std::to_string(qv.absorber_count()));
  }
  return reach_probability(qv, n) * qv.absorber(n);
}

double detect_probability_recurrent(const QVector& qv) {
  double absorbed = 0.0;
  for (const double q : qv.absorbers()) {
    absorbed += (1.0 - absorbed) * q;
  }
  return (1.0 - absorbed) * qv.detector();
}

double detect_probability_product(const QVector& qv) {
  double reach = 1.0;
  for (const double q : qv.absorbers()) reach *= 1.0 - q;
  return qv.detector() * reach;
}

double all_k_detect(double p_n, std::uint64_t k) {
  return std::pow(p_n, static_cast<double>(k));
}

CountDistribution binomial_distribution(std::uint64_t k, double p) {
  if (!is_probability(p)) {
    throw Error(ErrorCode::kOutOfRange,
                "binomial p = " + std::to_string(p) + " is outside [0, 1]");
  }
  CountDistribution d;
  d.probabilities.assign(static_cast<std::size_t>(k) + 1, 0.0);
  if (p == 0.0) {
    d.probabilities.front() = 1.0;
    return d;
  }
  if (p == 1.0) {
    d.probabilities.back() = 1.0;
    return d;
  }
  auto& w = d.probabilities;
  const double kd = static_cast<double>(k);
  if (k <= kDirectBinomialLimit) {
    // C(k, m) p^m (1-p)^(k-m) with a running-product coefficient; nothing
    // here can overflow or lose a non-negligible term to underflow.
    double coeff = 1.0;
    for (std::size_t m = 0; m <= k; ++m) {
      if (m > 0) {
        coeff = coeff * (kd - static_cast<double>(m) + 1.0) /
                static_cast<double>(m);
      }
      w[m] = coeff * std::pow(p, static_cast<double>(m)) *
             std::pow(1.0 - p, kd - static_cast<double>(m));
    }
    return d;
  }
  const std::size_t mode = static_cast<std::size_t>(
      std::min(kd, std::floor((kd + 1.0) * p)));
  const double odds = p / (1.0 - p);
  w[mode] = 1.0;
  for (std::size_t m = mode; m < k; ++m) {
    w[m + 1] = w[m] * ((kd - static_cast<double>(m)) /
                       static_cast<double>(m + 1)) * odds;
    if (w[m + 1] == 0.0) break;
  }
  for (std::size_t m = mode; m > 0; --m) {
    w[m - 1] = w[m] * (static_cast<double>(m) /
                       (kd - static_cast<double>(m) + 1.0)) / odds;
    if (w[m - 1] == 0.0) break;
  }
  // Neumaier summation; terms span many orders of magnitude for large k.
  double sum = 0.0;
  double carry = 0.0;
  for (const double x : w) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  sum += carry;
  for (double& x : w) x /= sum;
  return d;
}

double binomial_at_least(std::uint64_t k, double p, std::uint64_t m) {
  if (m == 0) return 1.0;
  if (m > k) return 0.0;
  return binomial_distribution(k, p).at_least(static_cast<std::size_t>(m));
}

CountDistribution m_of_k_distribution(double p_n, std::uint64_t k) {
  return binomial_distribution(k, p_n);
}

SurvivorDistribution bunched_survivor_distribution(const QVector& qv,
                                                   std::uint64_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "bunch size k must be >= 1");
  return expand(run_window(qv, k, qv.absorber_count()), k);
}

std::vector<SurvivorDistribution> bunched_survivor_stages(const QVector& qv,
                                                          std::uint64_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "bunch size k must be >= 1");
  std::vector<SurvivorDistribution> stages;
  SurvivorWindow w = initial_window(k, qv.absorber_count());
  stages.push_back(expand(w, k));
  for (const double q : qv.absorbers()) {
    cross_shell(w, q);
    stages.push_back(expand(w, k));
  }
  return stages;
}

double bunched_capture_probability(const QVector& qv, std::uint64_t k,
                                   std::size_t n) {
  if (n < 1 || n > qv.absorber_count()) {
    throw Error(ErrorCode::kOutOfRange,
                "absorber index " + std::to_string(n) + " outside 1.." +
                    std::to_string(qv.absorber_count()));
  }
  const SurvivorWindow w = run_window(qv, k, n - 1);
  const double q = qv.absorber(n);
  double captured = 0.0;
  for (std::size_t i = 0; i < w.mass.size(); ++i) {
    captured += w.mass[i] * capture_given_size(q, w.lo + i);
  }
  return captured;
}

CountDistribution bunched_detected_distribution(const QVector& qv,
                                                std::uint64_t k) {
  const SurvivorWindow w = run_window(qv, k, qv.absorber_count());
  CountDistribution d;
  d.probabilities.assign(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::size_t i = 0; i < w.mass.size(); ++i) {
    if (w.mass[i] == 0.0) continue;
    const CountDistribution readout =
        binomial_distribution(w.lo + i, qv.detector());
    for (std::size_t m = 0; m < readout.probabilities.size(); ++m) {
      d.probabilities[m] += w.mass[i] * readout.probabilities[m];
    }
  }
  return d;
}

double bunched_detect_at_least(const QVector& qv, std::uint64_t k,
                               std::uint64_t m) {
  if (m > k) {
    throw Error(ErrorCode::kOutOfRange,
                "m = " + std::to_string(m) + " exceeds bunch size k = " +
                    std::to_string(k));
  }
  const SurvivorWindow w = run_window(qv, k, qv.absorber_count());
  double p = 0.0;
  for (std::size_t i = 0; i < w.mass.size(); ++i) {
    if (w.mass[i] == 0.0) continue;
    p += w.mass[i] * binomial_at_least(w.lo + i, qv.detector(), m);
  }
  return p;
}

std::uint64_t guaranteed_event_m(std::size_t absorber_count, std::uint64_t k) {
  return k > absorber_count + 1 ? k - absorber_count : 1;
}

bool ordering_holds(double p_separate, double p_bunched, double p_vacuum,
                    double vacuum_power_bound) {
  return p_bunched - p_separate > kProbabilityTolerance &&
         p_bunched <= p_vacuum + kProbabilityTolerance &&
         p_bunched - vacuum_power_bound > kProbabilityTolerance;
}

InequalityVerdict inequality_report(const QVector& qv, std::uint64_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  InequalityVerdict v;
  v.event_m = guaranteed_event_m(qv.absorber_count(), k);
  v.p_separate =
      binomial_at_least(k, detect_probability_product(qv), v.event_m);
  v.p_bunched = bunched_detect_at_least(qv, k, v.event_m);
  v.p_vacuum = binomial_at_least(k, qv.detector(), v.event_m);
  v.vacuum_power_bound = all_k_detect(qv.detector(), v.event_m);
  v.degenerate_vacuum = std::all_of(qv.absorbers().begin(),
                                    qv.absorbers().end(),
                                    [](double q) { return q == 0.0; });
  v.ordering_holds = ordering_holds(v.p_separate, v.p_bunched, v.p_vacuum,
                                    v.vacuum_power_bound);
  return v;
}

}  // namespace photon
