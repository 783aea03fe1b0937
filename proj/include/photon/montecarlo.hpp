#pragma once

#include <cstdint>
#include <vector>

#include "photon/analytic.hpp"
#include "photon/random.hpp"
#include "photon/scenario.hpp"

namespace photon {

struct TrialOutcome {
  std::uint64_t detected = 0;
  std::vector<std::uint64_t> absorbed_at;  // one entry per shell
  std::uint64_t survivors_at_detector = 0;
};

// k photons emitted one at a time; each walks the shells independently and,
// if it reaches the detector, is registered with probability q_D.
TrialOutcome run_trial_separate(const QVector& qv, std::uint64_t k,
                                TrialStream& stream);

// k photons travelling together. Shell j removes one photon from a bunch of
// size s with probability 1 - (1 - q_j)^s. Survivors are read out with a
// Binomial(s, q_D) draw.
TrialOutcome run_trial_bunched(const QVector& qv, std::uint64_t k,
                               TrialStream& stream);

// Tallies over trials, indexed by count 0..K.
struct EmpiricalDistribution {
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  double fraction(std::size_t m) const;
  std::uint64_t at_least(std::size_t m) const;

  bool operator==(const EmpiricalDistribution&) const = default;
};

struct ExperimentResult {
  EmissionMode mode = EmissionMode::kSeparate;
  std::uint64_t photons_k = 0;
  EmpiricalDistribution detected;
  EmpiricalDistribution survivors;
  std::vector<std::uint64_t> absorbed_totals;  // per shell, summed over trials
  std::uint64_t min_survivors = 0;
  // Trials whose captures and survivors did not add up to K. Always zero
  // unless the engine is broken.
  std::uint64_t conservation_violations = 0;

  bool operator==(const ExperimentResult&) const = default;
};

struct ExperimentConfig {
  QVector qv;
  EmissionMode mode = EmissionMode::kSeparate;
  std::uint64_t photons_k = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 selects std::thread::hardware_concurrency()
};

// Output depends only on (qv, mode, k, trials, seed); the worker count never
// changes a single tally. Throws kEmptyExperiment when trials == 0.
ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_experiment(const ValidatedScenario& scenario,
                                unsigned workers = 0);

}  // namespace photon
