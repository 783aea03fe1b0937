#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photon/report.hpp"
#include "photon/scenario.hpp"

namespace photon {

// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitInput = 2,
  kExitVerification = 3,
};

struct CommandOptions {
  std::filesystem::path scenario_path;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<double> tol;
  std::optional<std::filesystem::path> out;
  std::vector<std::string> sweeps;  // "field=start:stop:step" or "field=a,b,c"
};

inline constexpr double kDefaultOracleTolerance = 1e-12;
inline constexpr double kDefaultSimulateTolZ = 4.0;
// Wilson intervals in reports are 3-sigma.
inline constexpr double kReportIntervalZ = 3.0;

RunReport analytic_report(const ValidatedScenario& scenario);
RunReport simulate_report(const ValidatedScenario& scenario, unsigned workers,
                          double tol_z);
RunReport oracle_report(const ValidatedScenario& scenario, double tol);
RunReport compare_report(const ValidatedScenario& scenario, unsigned workers);

struct SweepAxis {
  enum class Field { kShellQ, kDetectorQ, kPhotons, kAbsorbers };

  std::string key;
  Field field = Field::kShellQ;
  std::size_t shell_index = 0;  // kShellQ only, 0-based
  std::vector<double> values;
};

// Throws kInvalidArgument on an unknown field or an empty range.
SweepAxis parse_sweep_axis(std::string_view spec);

// One row per grid point, first axis outermost.
std::string sweep_table(const ValidatedScenario& scenario,
                        const std::vector<SweepAxis>& axes);

// Full command: load, override, validate, dispatch, write outputs. CSV goes
// to `out` (stdout when no --out is given) and diagnostics to `err`.
int run_command(std::string_view command, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace photon
