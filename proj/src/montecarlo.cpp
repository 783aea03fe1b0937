#include "photon/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <thread>

#include "photon/error.hpp"

namespace photon {

namespace {

struct TrialScratch {
  std::vector<std::uint64_t> absorbed;
  std::uint64_t survivors = 0;
  std::uint64_t detected = 0;

  explicit TrialScratch(std::size_t shells) : absorbed(shells, 0) {}

  void reset() {
    std::fill(absorbed.begin(), absorbed.end(), 0);
    survivors = 0;
    detected = 0;
  }
};

void walk_separate(const QVector& qv, std::uint64_t k, TrialStream& stream,
                   TrialScratch& t) {
  const auto qs = qv.absorbers();
  for (std::uint64_t photon = 0; photon < k; ++photon) {
    bool captured = false;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if (stream.bernoulli(qs[j])) {
        ++t.absorbed[j];
        captured = true;
        break;
      }
    }
    if (captured) continue;
    ++t.survivors;
    if (stream.bernoulli(qv.detector())) ++t.detected;
  }
}

void walk_bunched(const QVector& qv, std::uint64_t k, TrialStream& stream,
                  TrialScratch& t) {
  const auto qs = qv.absorbers();
  std::uint64_t size = k;
  for (std::size_t j = 0; j < qs.size() && size > 0; ++j) {
    const double capture =
        -std::expm1(static_cast<double>(size) * std::log1p(-qs[j]));
    if (stream.bernoulli(capture)) {
      t.absorbed[j] = 1;
      --size;
    }
  }
  t.survivors = size;
  if (size > 0) {
    std::binomial_distribution<std::uint64_t> readout(size, qv.detector());
    t.detected = readout(stream);
  }
}

TrialOutcome to_outcome(TrialScratch&& t) {
  return {t.detected, std::move(t.absorbed), t.survivors};
}

void add_into(ExperimentResult& total, const ExperimentResult& part) {
  for (std::size_t i = 0; i < total.detected.counts.size(); ++i) {
    total.detected.counts[i] += part.detected.counts[i];
    total.survivors.counts[i] += part.survivors.counts[i];
  }
  for (std::size_t j = 0; j < total.absorbed_totals.size(); ++j) {
    total.absorbed_totals[j] += part.absorbed_totals[j];
  }
  total.detected.trials += part.detected.trials;
  total.survivors.trials += part.survivors.trials;
  total.min_survivors = std::min(total.min_survivors, part.min_survivors);
  total.conservation_violations += part.conservation_violations;
}

ExperimentResult empty_result(const ExperimentConfig& c) {
  ExperimentResult r;
  r.mode = c.mode;
  r.photons_k = c.photons_k;
  r.detected.counts.assign(c.photons_k + 1, 0);
  r.detected.seed = c.seed;
  r.survivors = r.detected;
  r.absorbed_totals.assign(c.qv.absorber_count(), 0);
  r.min_survivors = c.photons_k;
  return r;
}

void run_range(const ExperimentConfig& c, std::uint64_t begin,
               std::uint64_t end, ExperimentResult& out) {
  TrialScratch t(c.qv.absorber_count());
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    t.reset();
    TrialStream stream(c.seed, trial);
    if (c.mode == EmissionMode::kSeparate) {
      walk_separate(c.qv, c.photons_k, stream, t);
    } else {
      walk_bunched(c.qv, c.photons_k, stream, t);
    }
    std::uint64_t captured = 0;
    for (std::size_t j = 0; j < t.absorbed.size(); ++j) {
      out.absorbed_totals[j] += t.absorbed[j];
      captured += t.absorbed[j];
    }
    if (captured + t.survivors != c.photons_k) ++out.conservation_violations;
    ++out.detected.counts[t.detected];
    ++out.survivors.counts[t.survivors];
    out.min_survivors = std::min(out.min_survivors, t.survivors);
  }
  out.detected.trials = end - begin;
  out.survivors.trials = end - begin;
}

}  // namespace

TrialOutcome run_trial_separate(const QVector& qv, std::uint64_t k,
                                TrialStream& stream) {
  TrialScratch t(qv.absorber_count());
  walk_separate(qv, k, stream, t);
  return to_outcome(std::move(t));
}

TrialOutcome run_trial_bunched(const QVector& qv, std::uint64_t k,
                               TrialStream& stream) {
  TrialScratch t(qv.absorber_count());
  walk_bunched(qv, k, stream, t);
  return to_outcome(std::move(t));
}

double EmpiricalDistribution::fraction(std::size_t m) const {
  if (trials == 0 || m >= counts.size()) return 0.0;
  return static_cast<double>(counts[m]) / static_cast<double>(trials);
}

std::uint64_t EmpiricalDistribution::at_least(std::size_t m) const {
  std::uint64_t sum = 0;
  for (std::size_t i = m; i < counts.size(); ++i) sum += counts[i];
  return sum;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.trials == 0) {
    throw Error(ErrorCode::kEmptyExperiment, "experiment needs trials >= 1");
  }
  if (config.photons_k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "photons_k must be >= 1");
  }
  unsigned workers = config.workers;
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, config.trials));

  std::vector<ExperimentResult> parts(workers, empty_result(config));
  const std::uint64_t chunk = config.trials / workers;
  const std::uint64_t extra = config.trials % workers;
  std::vector<std::jthread> threads;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    if (workers == 1) {
      run_range(config, begin, end, parts[w]);
    } else {
      threads.emplace_back([&config, begin, end, &part = parts[w]] {
        run_range(config, begin, end, part);
      });
    }
    begin = end;
  }
  threads.clear();

  ExperimentResult total = empty_result(config);
  for (const auto& part : parts) add_into(total, part);
  return total;
}

ExperimentResult run_experiment(const ValidatedScenario& scenario,
                                unsigned workers) {
  return run_experiment(ExperimentConfig{scenario.qv, scenario.emission_mode(),
                                         scenario.photons_k(),
                                         scenario.source.trials,
                                         scenario.source.seed, workers});
}

}  // namespace photon
