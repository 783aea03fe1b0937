#include "photon/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "photon/error.hpp"

namespace photon {

using nlohmann::json;

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidGeometry: return "invalid-geometry";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kSchemaViolation: return "schema-violation";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kEmptyExperiment: return "empty-experiment";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kMismatchedSupport: return "mismatched-support";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string_view to_string(DetectorMode mode) {
  return mode == DetectorMode::kSingle ? "single" : "multiphoton";
}

std::string_view to_string(EmissionMode mode) {
  return mode == EmissionMode::kSeparate ? "separate" : "bunched";
}

double vacuum_probability(double radius_m, double cross_section_m2) {
  if (!(radius_m > 0.0) || !(cross_section_m2 > 0.0) ||
      !std::isfinite(radius_m) || !std::isfinite(cross_section_m2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "radius and cross-section must be positive and finite");
  }
  const double q =
      cross_section_m2 / (4.0 * std::numbers::pi * radius_m * radius_m);
  if (q > 1.0) {
    throw Error(ErrorCode::kInvalidGeometry,
                "cross-section " + std::to_string(cross_section_m2) +
                    " m^2 exceeds the sphere area at radius " +
                    std::to_string(radius_m) + " m");
  }
  return q;
}

namespace {

// Resolves one interaction spec; appends an issue and returns nullopt on
// failure.
std::optional<double> resolve(const InteractionSpec& spec,
                              const std::string& label,
                              std::vector<ValidationIssue>& issues) {
  if (const auto* direct = std::get_if<DirectProbability>(&spec)) {
    if (!(direct->q >= 0.0 && direct->q <= 1.0)) {
      issues.push_back({"q-out-of-range", label,
                        "q = " + std::to_string(direct->q) +
                            " is outside [0, 1]"});
      return std::nullopt;
    }
    return direct->q;
  }
  const auto& geo = std::get<Geometry>(spec);
  try {
    return vacuum_probability(geo.radius_m, geo.cross_section_m2);
  } catch (const Error& e) {
    issues.push_back({e.code() == ErrorCode::kInvalidGeometry
                          ? "invalid-geometry"
                          : "nonpositive-geometry",
                      label, e.what()});
    return std::nullopt;
  }
}

std::optional<double> radius_of(const InteractionSpec& spec) {
  if (const auto* geo = std::get_if<Geometry>(&spec)) return geo->radius_m;
  return std::nullopt;
}

}  // namespace

ValidationResult validate(const Scenario& scenario) {
  ValidationResult result;
  auto& issues = result.issues;

  std::vector<double> qs;
  std::vector<std::string> labels;
  std::optional<double> last_radius;
  std::string last_label;
  for (std::size_t i = 0; i < scenario.shells.size(); ++i) {
    const ShellSpec& shell = scenario.shells[i];
    const std::string label =
        shell.label.empty() ? "shells[" + std::to_string(i) + "]"
                            : shell.label;
    labels.push_back(label);
    if (auto q = resolve(shell.interaction, label, issues)) qs.push_back(*q);
    if (auto r = radius_of(shell.interaction)) {
      if (last_radius && !(*r > *last_radius)) {
        issues.push_back({"shells-not-increasing", label,
                          "radius " + std::to_string(*r) +
                              " m does not exceed radius of " + last_label});
      }
      last_radius = r;
      last_label = label;
    }
  }

  const std::string detector_label =
      scenario.detector.label.empty() ? "detector" : scenario.detector.label;
  const auto q_d = resolve(scenario.detector.interaction, detector_label, issues);
  if (auto r = radius_of(scenario.detector.interaction);
      r && last_radius && !(*r > *last_radius)) {
    issues.push_back({"detector-not-outside", detector_label,
                      "detector radius " + std::to_string(*r) +
                          " m does not exceed radius of " + last_label});
  }

  const EmissionPlan& emission = scenario.emission;
  if (emission.photons_k < 1) {
    issues.push_back({"invalid-emission", "emission", "photons_k must be >= 1"});
  }
  if (!(emission.interval_t_s > 0.0) || !std::isfinite(emission.interval_t_s)) {
    issues.push_back(
        {"invalid-emission", "emission", "interval_t_s must be positive"});
  }
  if (emission.mode == EmissionMode::kBunched && emission.photons_k > 1 &&
      scenario.detector.mode != DetectorMode::kMultiphoton) {
    issues.push_back({"detector-mode", detector_label,
                      "bunched emission with photons_k > 1 requires a "
                      "multiphoton detector"});
  }

  if (issues.empty()) {
    result.scenario =
        ValidatedScenario{scenario, std::move(labels), QVector(qs, *q_d)};
  }
  return result;
}

ValidatedScenario validate_or_throw(const Scenario& scenario) {
  ValidationResult result = validate(scenario);
  if (!result.ok()) {
    std::ostringstream msg;
    msg << "scenario is invalid:";
    for (const auto& issue : result.issues) {
      msg << "\n  " << issue.code << " [" << issue.label
          << "]: " << issue.message;
    }
    throw Error(ErrorCode::kValidation, msg.str());
  }
  return std::move(*result.scenario);
}

// ---------------------------------------------------------------------------
// File format

namespace {

[[noreturn]] void schema_error(const std::string& path,
                               const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation,
              "schema violation at `" + path + "`: " + what);
}

void reject_unknown_keys(const json& node, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : node.items()) {
    if (!allowed.contains(key)) {
      schema_error(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

const json& require(const json& node, const std::string& path,
                    const std::string& key) {
  if (!node.contains(key)) {
    schema_error(path.empty() ? key : path + "." + key, "missing required key");
  }
  return node.at(key);
}

const json& require_object(const json& node, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  return node;
}

double read_number(const json& node, const std::string& path) {
  if (!node.is_number()) schema_error(path, "expected a number");
  return node.get<double>();
}

std::uint64_t read_unsigned(const json& node, const std::string& path) {
  if (!node.is_number_integer() ||
      (node.is_number_integer() && !node.is_number_unsigned())) {
    schema_error(path, "expected a non-negative integer");
  }
  return node.get<std::uint64_t>();
}

std::string read_string(const json& node, const std::string& path) {
  if (!node.is_string()) schema_error(path, "expected a string");
  return node.get<std::string>();
}

InteractionSpec read_interaction(const json& node, const std::string& path) {
  const bool has_q = node.contains("q");
  const bool has_radius = node.contains("radius_m");
  const bool has_section = node.contains("cross_section_m2");
  if (has_q && (has_radius || has_section)) {
    schema_error(path, "exclusive-fields: give either `q` or "
                       "`radius_m` + `cross_section_m2`, not both");
  }
  if (has_q) return DirectProbability{read_number(node.at("q"), path + ".q")};
  if (!has_radius && !has_section) {
    schema_error(path + ".q",
                 "missing required key (or `radius_m` + `cross_section_m2`)");
  }
  return Geometry{
      read_number(require(node, path, "radius_m"), path + ".radius_m"),
      read_number(require(node, path, "cross_section_m2"),
                  path + ".cross_section_m2")};
}

json write_interaction(const InteractionSpec& spec) {
  json out = json::object();
  if (const auto* direct = std::get_if<DirectProbability>(&spec)) {
    out["q"] = direct->q;
  } else {
    const auto& geo = std::get<Geometry>(spec);
    out["radius_m"] = geo.radius_m;
    out["cross_section_m2"] = geo.cross_section_m2;
  }
  return out;
}

Scenario from_json(const json& root) {
  require_object(root, "<root>");
  reject_unknown_keys(root, "",
                      {"shells", "detector", "emission", "trials", "seed"});
  Scenario s;

  const json& shells = require(root, "", "shells");
  if (!shells.is_array()) schema_error("shells", "expected a list");
  for (std::size_t i = 0; i < shells.size(); ++i) {
    const std::string path = "shells[" + std::to_string(i) + "]";
    const json& node = require_object(shells[i], path);
    reject_unknown_keys(node, path,
                        {"label", "q", "radius_m", "cross_section_m2"});
    ShellSpec shell;
    shell.label = node.contains("label")
                      ? read_string(node.at("label"), path + ".label")
                      : "shell" + std::to_string(i + 1);
    shell.interaction = read_interaction(node, path);
    s.shells.push_back(std::move(shell));
  }

  const json& det = require_object(require(root, "", "detector"), "detector");
  reject_unknown_keys(det, "detector",
                      {"label", "q", "radius_m", "cross_section_m2", "mode"});
  if (det.contains("label")) {
    s.detector.label = read_string(det.at("label"), "detector.label");
  }
  s.detector.interaction = read_interaction(det, "detector");
  if (det.contains("mode")) {
    const std::string mode = read_string(det.at("mode"), "detector.mode");
    if (mode == "single") {
      s.detector.mode = DetectorMode::kSingle;
    } else if (mode == "multiphoton") {
      s.detector.mode = DetectorMode::kMultiphoton;
    } else {
      schema_error("detector.mode", "expected \"single\" or \"multiphoton\"");
    }
  }

  const json& em = require_object(require(root, "", "emission"), "emission");
  reject_unknown_keys(em, "emission", {"mode", "photons_k", "interval_t_s"});
  const std::string mode =
      read_string(require(em, "emission", "mode"), "emission.mode");
  if (mode == "separate") {
    s.emission.mode = EmissionMode::kSeparate;
  } else if (mode == "bunched") {
    s.emission.mode = EmissionMode::kBunched;
  } else {
    schema_error("emission.mode", "expected \"separate\" or \"bunched\"");
  }
  s.emission.photons_k = read_unsigned(
      require(em, "emission", "photons_k"), "emission.photons_k");
  if (s.emission.photons_k == 0) {
    schema_error("emission.photons_k", "expected a positive integer");
  }
  if (em.contains("interval_t_s")) {
    s.emission.interval_t_s =
        read_number(em.at("interval_t_s"), "emission.interval_t_s");
  }

  if (root.contains("trials")) {
    s.trials = read_unsigned(root.at("trials"), "trials");
  }
  if (root.contains("seed")) s.seed = read_unsigned(root.at("seed"), "seed");
  return s;
}

json to_json(const Scenario& s) {
  json root = json::object();
  json shells = json::array();
  for (const auto& shell : s.shells) {
    json node = write_interaction(shell.interaction);
    node["label"] = shell.label;
    shells.push_back(std::move(node));
  }
  root["shells"] = std::move(shells);
  json det = write_interaction(s.detector.interaction);
  det["label"] = s.detector.label;
  det["mode"] = std::string(to_string(s.detector.mode));
  root["detector"] = std::move(det);
  root["emission"] = {{"mode", std::string(to_string(s.emission.mode))},
                      {"photons_k", s.emission.photons_k},
                      {"interval_t_s", s.emission.interval_t_s}};
  root["trials"] = s.trials;
  root["seed"] = s.seed;
  return root;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("parse error: ") + e.what());
  }
  return from_json(root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open scenario file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string dump_scenario(const Scenario& scenario) {
  return to_json(scenario).dump(2) + "\n";
}

void save_scenario(const Scenario& scenario,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write scenario file " + path.string());
  }
  out << dump_scenario(scenario);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace photon
