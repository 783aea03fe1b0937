#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "photon/analytic.hpp"

namespace photon {

// Probability that a photon reaching a sphere of the given radius interacts
// with a target of the given effective cross-section: a / (4 pi r^2).
// Throws kInvalidArgument for non-positive inputs and kInvalidGeometry when
// the cross-section exceeds the sphere area.
double vacuum_probability(double radius_m, double cross_section_m2);

struct Geometry {
  double radius_m = 0.0;
  double cross_section_m2 = 0.0;

  bool operator==(const Geometry&) const = default;
};

struct DirectProbability {
  double q = 0.0;

  bool operator==(const DirectProbability&) const = default;
};

using InteractionSpec = std::variant<Geometry, DirectProbability>;

struct ShellSpec {
  std::string label;
  InteractionSpec interaction;

  bool operator==(const ShellSpec&) const = default;
};

enum class DetectorMode { kSingle, kMultiphoton };
enum class EmissionMode { kSeparate, kBunched };

struct DetectorSpec {
  std::string label = "detector";
  InteractionSpec interaction;
  DetectorMode mode = DetectorMode::kSingle;

  bool operator==(const DetectorSpec&) const = default;
};

struct EmissionPlan {
  EmissionMode mode = EmissionMode::kSeparate;
  std::uint64_t photons_k = 1;
  // Interval length in seconds. Carried for bookkeeping; never enters a
  // probability.
  double interval_t_s = 1.0;

  bool operator==(const EmissionPlan&) const = default;
};

struct Scenario {
  std::vector<ShellSpec> shells;
  DetectorSpec detector;
  EmissionPlan emission;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;
};

struct ValidatedScenario {
  Scenario source;
  std::vector<std::string> labels;
  QVector qv;

  std::size_t absorber_count() const { return qv.absorber_count(); }
  std::uint64_t photons_k() const { return source.emission.photons_k; }
  EmissionMode emission_mode() const { return source.emission.mode; }
};

struct ValidationIssue {
  std::string code;   // e.g. "invalid-geometry", "shells-not-increasing"
  std::string label;  // shell or section the issue refers to
  std::string message;
};

struct ValidationResult {
  std::vector<ValidationIssue> issues;
  std::optional<ValidatedScenario> scenario;

  bool ok() const { return issues.empty(); }
};

ValidationResult validate(const Scenario& scenario);

// Like validate(), but throws kValidation listing every issue.
ValidatedScenario validate_or_throw(const Scenario& scenario);

std::string_view to_string(DetectorMode mode);
std::string_view to_string(EmissionMode mode);

// JSON scenario files. Unknown keys are rejected.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace photon
