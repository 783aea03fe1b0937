#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Closed-form detection statistics for photons crossing a sequence of
// single-capacity absorbers on their way to a detector.
//
// Indexing follows the physical ordering: absorbers are 1..A, and index A+1
// denotes the detector surface.

namespace photon {

// Per-surface interaction probabilities: q_1..q_A for the absorbers and q_D
// for the detector. Every entry lies in [0, 1].
class QVector {
 public:
  QVector() = default;
  // Throws kOutOfRange if any entry is outside [0, 1] or NaN.
  QVector(std::vector<double> absorber_qs, double detector_q);

  std::span<const double> absorbers() const { return absorber_qs_; }
  double absorber(std::size_t n) const { return absorber_qs_.at(n - 1); }
  double detector() const { return detector_q_; }
  std::size_t absorber_count() const { return absorber_qs_.size(); }

  bool operator==(const QVector&) const = default;

 private:
  std::vector<double> absorber_qs_;
  double detector_q_ = 0.0;
};

// Probability mass over a count 0..K (detected photons or bunch survivors).
struct CountDistribution {
  std::vector<double> probabilities;

  std::size_t max_count() const {
    return probabilities.empty() ? 0 : probabilities.size() - 1;
  }
  double at(std::size_t m) const {
    return m < probabilities.size() ? probabilities[m] : 0.0;
  }
  // P(count >= m), summed from the top of the support.
  double at_least(std::size_t m) const;
  double total() const;
};

using SurvivorDistribution = CountDistribution;

// Product of (1 - q_j) over j < index. index is 1..A+1.
double reach_probability(const QVector& qv, std::size_t index);

// Probability that a single photon is captured by absorber n (1..A).
double absorb_probability(const QVector& qv, std::size_t n);

// Single-photon detection probability evaluated as
//   [1 - sum_n P(n)] q_D
// with P(n) built from the running sum of earlier captures.
double detect_probability_recurrent(const QVector& qv);

// Same quantity through q_D * prod (1 - q_j).
double detect_probability_product(const QVector& qv);

double all_k_detect(double p_n, std::uint64_t k);

// Binomial(k, p) mass. Coefficients are never formed explicitly: the mass is
// grown outward from the mode with term ratios and normalised, so it stays
// finite for k up to ~1e6.
CountDistribution binomial_distribution(std::uint64_t k, double p);

// P(Binomial(k, p) >= m).
double binomial_at_least(std::uint64_t k, double p, std::uint64_t m);

CountDistribution m_of_k_distribution(double p_n, std::uint64_t k);

// Bunch size after each shell. A bunch of size s arriving at shell j loses
// exactly one photon with probability 1 - (1 - q_j)^s and none otherwise.
// Only the window [max(0, k - A), k] can be populated.
SurvivorDistribution bunched_survivor_distribution(const QVector& qv,
                                                   std::uint64_t k);

// Survivor distributions on arrival at each surface: element j (0-based) is
// the distribution reaching absorber j+1; the last element is the one
// reaching the detector.
std::vector<SurvivorDistribution> bunched_survivor_stages(const QVector& qv,
                                                          std::uint64_t k);

// Probability that absorber n (1..A) captures a photon from the bunch.
double bunched_capture_probability(const QVector& qv, std::uint64_t k,
                                   std::size_t n);

// Detected-count distribution for a bunch read out by a multiphoton detector
// that registers each survivor independently with probability q_D.
CountDistribution bunched_detected_distribution(const QVector& qv,
                                                std::uint64_t k);

// P(at least m detections) for a bunch of k photons. Throws kOutOfRange if
// m > k.
double bunched_detect_at_least(const QVector& qv, std::uint64_t k,
                               std::uint64_t m);

// Absolute tolerance for probability comparisons in verdicts. Strict
// inequalities need a margin larger than this.
inline constexpr double kProbabilityTolerance = 1e-12;

struct InequalityVerdict {
  double p_separate = 0.0;
  double p_bunched = 0.0;
  double p_vacuum = 0.0;
  double vacuum_power_bound = 0.0;
  bool ordering_holds = false;
  // No absorber can capture anything, so all three paths coincide.
  bool degenerate_vacuum = false;
  std::uint64_t event_m = 1;
};

// M = max(1, k - A), the count a bunch always delivers to the detector.
std::uint64_t guaranteed_event_m(std::size_t absorber_count, std::uint64_t k);

// ordering_holds := p_separate < p_bunched <= p_vacuum and
//                   p_bunched > q_D^M, all at kProbabilityTolerance.
bool ordering_holds(double p_separate, double p_bunched, double p_vacuum,
                    double vacuum_power_bound);

// Compares "at least M detections in the interval" for a separate stream, a
// bunch, and an absorber-free path.
InequalityVerdict inequality_report(const QVector& qv, std::uint64_t k);

}  // namespace photon
