#include "photon/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "photon/analytic.hpp"
#include "photon/error.hpp"
#include "photon/montecarlo.hpp"
#include "photon/oracle.hpp"
#include "photon/stats.hpp"

namespace photon {

namespace {

using Path = ComputationPath;

std::string indexed(std::string_view name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

std::string labelled(std::string_view name, std::string_view label) {
  return std::string(name) + "[" + std::string(label) + "]";
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

CountDistribution detected_distribution(const QVector& qv, EmissionMode mode,
                                        std::uint64_t k) {
  return mode == EmissionMode::kSeparate
             ? m_of_k_distribution(detect_probability_recurrent(qv), k)
             : bunched_detected_distribution(qv, k);
}

CountDistribution survivor_distribution(const QVector& qv, EmissionMode mode,
                                        std::uint64_t k) {
  return mode == EmissionMode::kSeparate
             ? binomial_distribution(k, reach_probability(
                                            qv, qv.absorber_count() + 1))
             : bunched_survivor_distribution(qv, k);
}

void add_summary(RunReport& r, const SummaryStats& s, Path path) {
  r.add("mean_detected", path, s.mean);
  r.add("variance_detected", path, s.variance);
  if (s.fano) {
    r.add("fano_factor", path, *s.fano);
    r.add("mandel_q", path, *s.mandel_q);
  }
}

nlohmann::json verdict_json(const InequalityVerdict& v) {
  return {{"event_m", v.event_m},
          {"p_separate", v.p_separate},
          {"p_bunched", v.p_bunched},
          {"p_vacuum", v.p_vacuum},
          {"vacuum_power_bound", v.vacuum_power_bound},
          {"ordering_holds", v.ordering_holds},
          {"degenerate_vacuum", v.degenerate_vacuum}};
}

void add_verdict(RunReport& r, const InequalityVerdict& v, Path path) {
  r.add("event_m", path, static_cast<double>(v.event_m));
  r.add("p_separate", path, v.p_separate);
  r.add("p_bunched", path, v.p_bunched);
  r.add("p_vacuum", path, v.p_vacuum);
  r.add("vacuum_power_bound", path, v.vacuum_power_bound);
  r.add("ordering_holds", path, v.ordering_holds ? 1.0 : 0.0);
  if (v.p_separate > 0.0) {
    r.add("amplification", path, v.p_bunched / v.p_separate);
  }
}

std::string verdict_line(const InequalityVerdict& v) {
  return "p_separate=" + fixed6(v.p_separate) +
         " p_bunched=" + fixed6(v.p_bunched) +
         " p_vacuum=" + fixed6(v.p_vacuum) +
         " bound=" + fixed6(v.vacuum_power_bound) +
         " ordering_holds=" + (v.ordering_holds ? "true" : "false");
}

// Conditions under which the ordering is claimed to hold strictly.
bool ordering_claim_applies(const QVector& qv, std::uint64_t k) {
  const auto qs = qv.absorbers();
  return !qs.empty() && k > qs.size() && qv.detector() > 0.0 &&
         qv.detector() < 1.0 &&
         std::all_of(qs.begin(), qs.end(),
                     [](double q) { return q > 0.0 && q < 1.0; });
}

void append_model_rows(RunReport& r, const ValidatedScenario& vs) {
  const QVector& qv = vs.qv;
  const std::uint64_t k = vs.photons_k();
  const EmissionMode mode = vs.emission_mode();

  for (std::size_t n = 1; n <= qv.absorber_count(); ++n) {
    const std::string& label = vs.labels[n - 1];
    r.add(labelled("reach_probability", label), Path::kAnalytic,
          reach_probability(qv, n));
    r.add(labelled("absorb_probability", label), Path::kAnalytic,
          absorb_probability(qv, n));
  }
  r.add(labelled("reach_probability", vs.source.detector.label),
        Path::kAnalytic, reach_probability(qv, qv.absorber_count() + 1));
  const double p_n = detect_probability_recurrent(qv);
  r.add("detect_probability", Path::kAnalytic, p_n);
  r.add("all_k_detect", Path::kAnalytic, all_k_detect(p_n, k));

  if (mode == EmissionMode::kBunched) {
    for (std::size_t n = 1; n <= qv.absorber_count(); ++n) {
      r.add(labelled("capture_probability", vs.labels[n - 1]), Path::kAnalytic,
            bunched_capture_probability(qv, k, n));
    }
  }
  const CountDistribution survivors = survivor_distribution(qv, mode, k);
  for (std::size_t s = 0; s <= k; ++s) {
    r.add(indexed("survivor_probability", s), Path::kAnalytic,
          survivors.probabilities[s]);
  }
  const CountDistribution detected = detected_distribution(qv, mode, k);
  for (std::size_t m = 0; m <= k; ++m) {
    r.add(indexed("count_probability", m), Path::kAnalytic,
          detected.probabilities[m]);
  }
  add_summary(r, summarize(detected), Path::kAnalytic);

  const InequalityVerdict verdict = inequality_report(qv, k);
  add_verdict(r, verdict, Path::kAnalytic);
  r.details["inequality"] = verdict_json(verdict);
}

RunReport start_report(std::string command, const ValidatedScenario& vs) {
  RunReport r;
  r.command = std::move(command);
  r.scenario = vs.source;
  r.details["q_vector"] = {
      {"absorbers", std::vector<double>(vs.qv.absorbers().begin(),
                                        vs.qv.absorbers().end())},
      {"detector", vs.qv.detector()}};
  return r;
}

nlohmann::json comparison_json(const ComparisonReport& c) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : c.cells) {
    cells.push_back({{"count", cell.count},
                     {"observed", cell.observed},
                     {"expected", cell.expected},
                     {"empirical", cell.empirical},
                     {"z", std::isfinite(cell.z) ? nlohmann::json(cell.z)
                                                 : nlohmann::json(nullptr)}});
  }
  return {{"cells", std::move(cells)},
          {"chi_square", c.chi_square},
          {"degrees_of_freedom", c.degrees_of_freedom},
          {"p_value", std::isfinite(c.p_value) ? nlohmann::json(c.p_value)
                                               : nlohmann::json(nullptr)},
          {"max_abs_deviation", c.max_abs_deviation},
          {"max_abs_z", std::isfinite(c.max_abs_z)
                            ? nlohmann::json(c.max_abs_z)
                            : nlohmann::json(nullptr)},
          {"tol_z", c.tol_z},
          {"pass", c.pass}};
}

void add_fraction(RunReport& r, std::string quantity, std::uint64_t successes,
                  std::uint64_t trials) {
  r.add(std::move(quantity), Path::kMonteCarlo,
        static_cast<double>(successes) / static_cast<double>(trials),
        wilson_interval(successes, trials, kReportIntervalZ));
}

}  // namespace

RunReport analytic_report(const ValidatedScenario& vs) {
  RunReport r = start_report("analytic", vs);
  append_model_rows(r, vs);
  return r;
}

RunReport simulate_report(const ValidatedScenario& vs, unsigned workers,
                          double tol_z) {
  RunReport r = start_report("simulate", vs);
  append_model_rows(r, vs);

  const QVector& qv = vs.qv;
  const std::uint64_t k = vs.photons_k();
  const EmissionMode mode = vs.emission_mode();
  const ExperimentResult mc = run_experiment(vs, workers);
  const std::uint64_t trials = mc.detected.trials;

  if (mode == EmissionMode::kSeparate) {
    std::uint64_t detected_photons = 0;
    for (std::size_t m = 0; m <= k; ++m) detected_photons += m * mc.detected.counts[m];
    for (std::size_t n = 1; n <= qv.absorber_count(); ++n) {
      add_fraction(r, labelled("absorb_probability", vs.labels[n - 1]),
                   mc.absorbed_totals[n - 1], trials * k);
    }
    add_fraction(r, "detect_probability", detected_photons, trials * k);
  } else {
    for (std::size_t n = 1; n <= qv.absorber_count(); ++n) {
      add_fraction(r, labelled("capture_probability", vs.labels[n - 1]),
                   mc.absorbed_totals[n - 1], trials);
    }
  }
  for (std::size_t s = 0; s <= k; ++s) {
    add_fraction(r, indexed("survivor_probability", s),
                 mc.survivors.counts[s], trials);
  }
  for (std::size_t m = 0; m <= k; ++m) {
    add_fraction(r, indexed("count_probability", m), mc.detected.counts[m],
                 trials);
  }
  add_summary(r, summarize(mc.detected), Path::kMonteCarlo);

  const std::uint64_t event_m = guaranteed_event_m(qv.absorber_count(), k);
  add_fraction(r, mode == EmissionMode::kSeparate ? "p_separate" : "p_bunched",
               mc.detected.at_least(event_m), trials);
  r.add("min_survivors", Path::kMonteCarlo,
        static_cast<double>(mc.min_survivors));

  ComparisonReport cmp = compare_to_analytic(
      mc.detected, detected_distribution(qv, mode, k), tol_z);
  cmp.inequality = inequality_report(qv, k);
  r.add("chi_square", Path::kMonteCarlo, cmp.chi_square);
  r.add("chi_square_dof", Path::kMonteCarlo,
        static_cast<double>(cmp.degrees_of_freedom));
  r.add("chi_square_p_value", Path::kMonteCarlo, cmp.p_value);
  r.add("max_abs_z", Path::kMonteCarlo, cmp.max_abs_z);

  const std::uint64_t floor = mode == EmissionMode::kBunched && k > qv.absorber_count()
                                  ? k - qv.absorber_count()
                                  : 0;
  const bool invariants_ok =
      mc.conservation_violations == 0 && mc.min_survivors >= floor;

  r.details["comparison"] = comparison_json(cmp);
  r.details["trials"] = trials;
  r.details["seed"] = vs.source.seed;
  r.details["conservation_violations"] = mc.conservation_violations;
  r.details["survivor_floor"] = floor;
  r.exit_code = cmp.pass && invariants_ok ? kExitOk : kExitVerification;
  r.console.push_back(std::string("simulate ") +
                      (r.exit_code == kExitOk ? "pass" : "FAIL") +
                      " trials=" + std::to_string(trials) +
                      " max_abs_z=" + format_number(cmp.max_abs_z) +
                      " tol_z=" + format_number(tol_z));
  return r;
}

RunReport oracle_report(const ValidatedScenario& vs, double tol) {
  RunReport r = start_report("oracle", vs);
  const QVector& qv = vs.qv;
  const std::uint64_t k = vs.photons_k();

  const oracle::CrossCheckReport check = oracle::cross_check(qv, k, tol);
  const CountDistribution separate =
      oracle::enumerate_separate(qv, k).to_doubles();
  const oracle::BunchedEnumeration bunched = oracle::enumerate_bunched(qv, k);
  const CountDistribution survivors = bunched.survivors.to_doubles();
  const CountDistribution bunched_detected = bunched.detected.to_doubles();

  for (std::size_t m = 0; m <= k; ++m) {
    r.add(indexed("separate_count_probability", m), Path::kOracle,
          separate.probabilities[m]);
  }
  for (std::size_t s = 0; s <= k; ++s) {
    r.add(indexed("survivor_probability", s), Path::kOracle,
          survivors.probabilities[s]);
  }
  for (std::size_t m = 0; m <= k; ++m) {
    r.add(indexed("bunched_count_probability", m), Path::kOracle,
          bunched_detected.probabilities[m]);
  }
  add_verdict(r, check.oracle_verdict, Path::kOracle);
  add_verdict(r, check.analytic_verdict, Path::kAnalytic);
  r.add("max_deviation", Path::kOracle, check.max_deviation());

  r.details["oracle_inequality"] = verdict_json(check.oracle_verdict);
  r.details["analytic_inequality"] = verdict_json(check.analytic_verdict);
  r.details["cross_check"] = {
      {"tolerance", check.tolerance},
      {"max_dev_separate", check.max_dev_separate},
      {"max_dev_survivors", check.max_dev_survivors},
      {"max_dev_bunched_detected", check.max_dev_bunched_detected},
      {"max_dev_verdict", check.max_dev_verdict},
      {"totals_exact", check.totals_exact},
      {"pass", check.pass}};
  r.exit_code = check.pass ? kExitOk : kExitVerification;
  r.console.push_back(std::string("oracle ") + (check.pass ? "pass" : "FAIL") +
                      " max_deviation=" + format_number(check.max_deviation()) +
                      " tol=" + format_number(tol));
  if (check.oracle_verdict.degenerate_vacuum) {
    r.console.push_back("notice: degenerate-vacuum (no absorbing shells; "
                        "all paths equal)");
  }
  return r;
}

RunReport compare_report(const ValidatedScenario& vs, unsigned workers) {
  RunReport r = start_report("compare", vs);
  const QVector& qv = vs.qv;
  const std::uint64_t k = vs.photons_k();

  const InequalityVerdict verdict = inequality_report(qv, k);
  const CountDistribution separate =
      m_of_k_distribution(detect_probability_recurrent(qv), k);
  const CountDistribution bunched = bunched_detected_distribution(qv, k);
  add_verdict(r, verdict, Path::kAnalytic);
  for (const auto& [name, dist] :
       {std::pair{"separate", &separate}, std::pair{"bunched", &bunched}}) {
    const SummaryStats s = summarize(*dist);
    r.add(std::string("mean_detected_") + name, Path::kAnalytic, s.mean);
    if (s.fano) {
      r.add(std::string("fano_factor_") + name, Path::kAnalytic, *s.fano);
    }
  }
  r.details["inequality"] = verdict_json(verdict);

  r.console.push_back(verdict_line(verdict));
  const Amplification amp =
      bunching_amplification(separate, bunched, verdict.event_m);
  r.console.push_back(
      "event_m=" + std::to_string(verdict.event_m) + " amplification=" +
      (amp.ratio ? format_number(*amp.ratio) : std::string("undefined")) +
      (amp.ratio ? "" : " (separate stream never reaches the event; "
                        "p_bunched=" + format_number(amp.numerator) + ")"));
  if (verdict.degenerate_vacuum) {
    r.console.push_back(
        "notice: degenerate-vacuum (no absorbing shells; separate, bunched "
        "and vacuum paths coincide)");
  }

  const std::uint64_t trials = vs.source.trials;
  if (trials > 0) {
    ExperimentConfig config{qv, EmissionMode::kSeparate, k, trials,
                            vs.source.seed, workers};
    const ExperimentResult sep_mc = run_experiment(config);
    config.mode = EmissionMode::kBunched;
    const ExperimentResult bun_mc = run_experiment(config);
    add_fraction(r, "p_separate", sep_mc.detected.at_least(verdict.event_m),
                 trials);
    add_fraction(r, "p_bunched", bun_mc.detected.at_least(verdict.event_m),
                 trials);
    const Amplification mc_amp = bunching_amplification(
        sep_mc.detected, bun_mc.detected, verdict.event_m);
    if (mc_amp.ratio) {
      r.add("amplification", Path::kMonteCarlo, *mc_amp.ratio);
    }
    for (const auto& [name, result] :
         {std::pair{"separate", &sep_mc}, std::pair{"bunched", &bun_mc}}) {
      const SummaryStats s = summarize(result->detected);
      r.add(std::string("mean_detected_") + name, Path::kMonteCarlo, s.mean);
      if (s.fano) {
        r.add(std::string("fano_factor_") + name, Path::kMonteCarlo, *s.fano);
      }
    }
    r.console.push_back(
        "montecarlo trials=" + std::to_string(trials) +
        " p_separate=" + fixed6(mc_amp.denominator) +
        " p_bunched=" + fixed6(mc_amp.numerator) + " amplification=" +
        (mc_amp.ratio ? format_number(*mc_amp.ratio) : "undefined"));
  }

  if (!verdict.ordering_holds && ordering_claim_applies(qv, k)) {
    r.exit_code = kExitVerification;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

double parse_double(std::string_view text, std::string_view context) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot parse number `" + s + "` in " + std::string(context));
  }
  return value;
}

// Trims float noise from start + i * step (0.30000000000000004 -> 0.3).
double tidy(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::vector<double> parse_range(std::string_view text, std::string_view key) {
  std::vector<double> values;
  const std::string context = "sweep range for `" + std::string(key) + "`";
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = text.find(':', start);
      parts.push_back(text.substr(start, colon - start));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument,
                  context + ": expected start:stop:step");
    }
    const double first = parse_double(parts[0], context);
    const double last = parse_double(parts[1], context);
    const double step = parse_double(parts[2], context);
    if (!(step > 0.0) || last < first) {
      throw Error(ErrorCode::kInvalidArgument, context + " is empty");
    }
    const auto count =
        static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      values.push_back(tidy(first + static_cast<double>(i) * step));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      const auto item = text.substr(start, comma - start);
      if (!item.empty()) values.push_back(parse_double(item, context));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, context + " is empty");
  }
  return values;
}

bool is_non_negative_integer(double x) {
  return x >= 0.0 && std::floor(x) == x && x < 1e15;
}

}  // namespace

SweepAxis parse_sweep_axis(std::string_view spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep `" + std::string(spec) + "` must look like field=range");
  }
  SweepAxis axis;
  axis.key = std::string(spec.substr(0, eq));
  const std::string& key = axis.key;
  if (key == "detector.q") {
    axis.field = SweepAxis::Field::kDetectorQ;
  } else if (key == "emission.photons_k") {
    axis.field = SweepAxis::Field::kPhotons;
  } else if (key == "absorbers") {
    axis.field = SweepAxis::Field::kAbsorbers;
  } else if (key.starts_with("shells[") && key.ends_with("].q")) {
    axis.field = SweepAxis::Field::kShellQ;
    const std::string index = key.substr(7, key.size() - 7 - 3);
    if (index.empty() ||
        !std::all_of(index.begin(), index.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown sweep field `" + key + "`");
    }
    axis.shell_index = std::stoul(index);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown sweep field `" + key +
                    "` (expected shells[i].q, detector.q, "
                    "emission.photons_k or absorbers)");
  }
  axis.values = parse_range(spec.substr(eq + 1), key);
  for (const double v : axis.values) {
    const bool ok = axis.field == SweepAxis::Field::kPhotons
                        ? is_non_negative_integer(v) && v >= 1.0
                    : axis.field == SweepAxis::Field::kAbsorbers
                        ? is_non_negative_integer(v)
                        : v >= 0.0 && v <= 1.0;
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "value " + format_number(v) + " is not valid for `" + key +
                      "`");
    }
  }
  return axis;
}

std::string sweep_table(const ValidatedScenario& vs,
                        const std::vector<SweepAxis>& axes) {
  if (axes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one axis");
  }
  std::ostringstream out;
  for (const auto& axis : axes) out << axis.key << ',';
  out << "p_separate,p_bunched,p_vacuum,vacuum_power_bound,ordering_holds,"
         "amplification\n";

  const std::vector<double> base_qs(vs.qv.absorbers().begin(),
                                    vs.qv.absorbers().end());
  std::vector<std::size_t> odometer(axes.size(), 0);
  while (true) {
    std::vector<double> qs = base_qs;
    double q_d = vs.qv.detector();
    std::uint64_t k = vs.photons_k();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].field != SweepAxis::Field::kAbsorbers) continue;
      const auto count = static_cast<std::size_t>(axes[a].values[odometer[a]]);
      if (count > qs.size() && base_qs.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sweeping `absorbers` needs at least one template shell");
      }
      const double template_q = base_qs.empty() ? 0.0 : base_qs.back();
      qs.resize(count, template_q);
    }
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].values[odometer[a]];
      switch (axes[a].field) {
        case SweepAxis::Field::kShellQ:
          if (axes[a].shell_index >= qs.size()) {
            throw Error(ErrorCode::kInvalidArgument,
                        "sweep field `" + axes[a].key +
                            "` refers to a missing shell");
          }
          qs[axes[a].shell_index] = v;
          break;
        case SweepAxis::Field::kDetectorQ: q_d = v; break;
        case SweepAxis::Field::kPhotons: k = static_cast<std::uint64_t>(v); break;
        case SweepAxis::Field::kAbsorbers: break;
      }
    }

    const QVector qv(qs, q_d);
    const InequalityVerdict v = inequality_report(qv, k);
    for (std::size_t a = 0; a < axes.size(); ++a) {
      out << format_number(axes[a].values[odometer[a]]) << ',';
    }
    out << format_number(v.p_separate) << ',' << format_number(v.p_bunched)
        << ',' << format_number(v.p_vacuum) << ','
        << format_number(v.vacuum_power_bound) << ','
        << (v.ordering_holds ? "true" : "false") << ','
        << (v.p_separate > 0.0 ? format_number(v.p_bunched / v.p_separate)
                               : std::string("nan"))
        << '\n';

    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++odometer[a] < axes[a].values.size()) break;
      odometer[a] = 0;
      if (a == 0) return out.str();
    }
  }
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kIo ? kExitIo : kExitInput;
}

std::filesystem::path json_path_for(const std::filesystem::path& out) {
  std::filesystem::path json = out;
  json.replace_extension(".json");
  if (json == out) json += ".report.json";
  return json;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  file << text;
  if (!file) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* env = std::getenv("PHOTON_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  const std::string text(env);
  if (!std::all_of(text.begin(), text.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::kInvalidArgument,
                "PHOTON_SEED must be an unsigned integer, got `" + text + "`");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::kInvalidArgument, "PHOTON_SEED is out of range");
  }
}

}  // namespace

int run_command(std::string_view command, const CommandOptions& options,
                std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    Scenario scenario = load_scenario(options.scenario_path);
    if (options.trials) scenario.trials = *options.trials;
    if (options.seed) {
      scenario.seed = *options.seed;
    } else if (auto env = seed_from_environment()) {
      scenario.seed = *env;
    }
    const ValidatedScenario vs = validate_or_throw(scenario);
    const unsigned workers = options.workers.value_or(0);

    if (command == "sweep") {
      std::vector<SweepAxis> axes;
      for (const auto& spec : options.sweeps) {
        axes.push_back(parse_sweep_axis(spec));
      }
      const std::string table = sweep_table(vs, axes);
      if (options.out) {
        write_file(*options.out, table);
      } else {
        out << table;
      }
      return kExitOk;
    }

    RunReport report;
    if (command == "analytic") {
      report = analytic_report(vs);
    } else if (command == "simulate") {
      report = simulate_report(vs, workers,
                               options.tol.value_or(kDefaultSimulateTolZ));
    } else if (command == "oracle") {
      report = oracle_report(vs, options.tol.value_or(kDefaultOracleTolerance));
    } else if (command == "compare") {
      report = compare_report(vs, workers);
    } else {
      err << "unknown command `" << command << "`\n";
      return kExitInput;
    }
    report.elapsed_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started)
                           .count();

    const std::string csv = to_csv(report);
    if (options.out) {
      write_file(*options.out, csv);
      write_file(json_path_for(*options.out), to_json(report).dump(2) + "\n");
    } else if (command != "compare") {
      out << csv;
    }
    if (command == "compare" || options.out) {
      for (const auto& line : report.console) out << line << '\n';
    } else {
      for (const auto& line : report.console) err << line << '\n';
    }
    return report.exit_code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace photon
