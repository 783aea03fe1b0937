#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "photon/scenario.hpp"
#include "photon/stats.hpp"

namespace photon {

enum class ComputationPath { kAnalytic, kOracle, kMonteCarlo };

std::string_view to_string(ComputationPath path);

struct ReportRow {
  std::string quantity;
  ComputationPath path = ComputationPath::kAnalytic;
  double value = 0.0;
  std::optional<Interval> ci;  // Monte Carlo rows only
};

struct RunReport {
  std::string command;
  Scenario scenario;
  std::vector<ReportRow> rows;
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> console;  // human-readable lines for stdout
  double elapsed_s = 0.0;
  int exit_code = 0;

  void add(std::string quantity, ComputationPath path, double value,
           std::optional<Interval> ci = std::nullopt);
};

// Shortest decimal string that parses back to exactly the same double.
std::string format_number(double value);

inline constexpr std::string_view kReportCsvHeader =
    "quantity,path,value,ci_lo,ci_hi";

std::string to_csv(const RunReport& report);
nlohmann::json to_json(const RunReport& report);

}  // namespace photon
