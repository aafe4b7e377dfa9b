#pragma once

#include <string>
#include <vector>

#include "netres/scenario.hpp"

namespace netres {

/// One named result table with preformatted cells (12 significant digits
/// for numeric data, fixed per experiment kind).
struct ReportTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunReport {
  std::string kind;
  std::uint64_t seed = 0;
  std::string toolkit_version;
  double wall_seconds = 0.0;  // header only; never enters the tables
  std::string config_echo;    // resolved scenario JSON
  std::vector<ReportTable> tables;
  std::vector<std::string> notes;  // convention flags, e.g. single-slice SII
};

/// Formats a double with 12 significant digits, the fixed table format.
std::string format_cell(double value);

/// Dispatches a validated scenario to the owning module and collects the
/// result tables. All randomness derives from the scenario's master seed.
RunReport run_experiment(const ScenarioFile& cfg);

/// Writes report.json and one CSV per table under `out_dir` (created if
/// missing). Files are written to a temporary name and renamed so failures
/// never leave partial reports behind.
std::vector<std::string> emit_report(const RunReport& report,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats);

}  // namespace netres
