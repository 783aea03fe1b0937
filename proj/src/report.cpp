#include "photon/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace photon {

std::string_view to_string(ComputationPath path) {
  switch (path) {
    case ComputationPath::kAnalytic: return "analytic";
    case ComputationPath::kOracle: return "oracle";
    case ComputationPath::kMonteCarlo: return "montecarlo";
  }
  return "unknown";
}

void RunReport::add(std::string quantity, ComputationPath path, double value,
                    std::optional<Interval> ci) {
  rows.push_back({std::move(quantity), path, value, ci});
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string to_csv(const RunReport& report) {
  std::ostringstream out;
  out << kReportCsvHeader << '\n';
  for (const auto& row : report.rows) {
    out << row.quantity << ',' << to_string(row.path) << ','
        << format_number(row.value) << ',';
    if (row.ci) out << format_number(row.ci->lo);
    out << ',';
    if (row.ci) out << format_number(row.ci->hi);
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const RunReport& report) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = {{"quantity", row.quantity},
              {"path", std::string(to_string(row.path))}};
    // JSON has no NaN/inf; those values are written as null.
    r["value"] = std::isfinite(row.value) ? json(row.value) : json(nullptr);
    if (row.ci) r["ci"] = {row.ci->lo, row.ci->hi};
    rows.push_back(std::move(r));
  }
  return {{"command", report.command},
          {"scenario", json::parse(dump_scenario(report.scenario))},
          {"rows", std::move(rows)},
          {"details", report.details},
          {"exit_code", report.exit_code},
          {"timing", {{"elapsed_s", report.elapsed_s}}}};
}

}  // namespace photon
