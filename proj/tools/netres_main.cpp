#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "netres/errors.hpp"
#include "netres/report.hpp"
#include "netres/scenario.hpp"
#include "netres/version.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonFlags {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> formats;
};

void print_problems(const netres::ValidationError& err) {
  std::cerr << "validation failed (" << err.problems().size() << " problem"
            << (err.problems().size() == 1 ? "" : "s") << "):\n";
  for (const auto& p : err.problems()) std::cerr << "  - " << p << "\n";
}

int run_scenario(netres::ExperimentKind kind, const CommonFlags& flags) {
  netres::ScenarioFile cfg;
  try {
    cfg = netres::load_scenario(flags.scenario_path);
  } catch (const netres::ValidationError& err) {
    print_problems(err);
    return kExitValidation;
  }
  if (cfg.kind != kind) {
    std::cerr << "scenario kind is '" << netres::to_string(cfg.kind)
              << "' but the subcommand expects '" << netres::to_string(kind)
              << "'\n";
    return kExitValidation;
  }
  if (flags.seed) {
    cfg.seed = *flags.seed;
    cfg.seed_set = true;
  }
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (!flags.formats.empty()) {
    for (const auto& fmt : flags.formats) {
      if (fmt != "csv" && fmt != "json") {
        std::cerr << "unknown output format '" << fmt << "' (expected csv, json)\n";
        return kExitValidation;
      }
    }
    cfg.formats = flags.formats;
  }

  netres::RunReport report;
  try {
    report = netres::run_experiment(cfg);
  } catch (const netres::ValidationError& err) {
    print_problems(err);
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  std::vector<std::string> written;
  try {
    written = netres::emit_report(report, cfg.out_dir, cfg.formats);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  // Small tables inline; larger ones by reference to their files.
  for (const auto& table : report.tables) {
    if (table.rows.size() <= 12) {
      std::cout << "[" << table.name << "]\n";
      for (std::size_t i = 0; i < table.header.size(); ++i) {
        std::cout << (i ? "," : "") << table.header[i];
      }
      std::cout << "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          std::cout << (i ? "," : "") << row[i];
        }
        std::cout << "\n";
      }
    } else {
      std::cout << "[" << table.name << "] " << table.rows.size() << " rows\n";
    }
  }
  for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
  for (const auto& path : written) std::cerr << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netres: hybrid-dynamics resilience metrics, controllers, "
               "attacker-defender games, digital-twin risk assessment, and "
               "network analytics"};
  app.set_version_flag("--version", netres::kToolkitVersion);
  app.require_subcommand(1);

  std::vector<std::pair<netres::ExperimentKind, CommonFlags>> jobs;
  jobs.reserve(netres::experiment_kind_names().size());

  for (const auto& name : netres::experiment_kind_names()) {
    auto kind = *netres::parse_experiment_kind(name);
    jobs.emplace_back(kind, CommonFlags{});
    auto& flags = jobs.back().second;
    auto* sub = app.add_subcommand(name, "run a '" + name + "' scenario file");
    sub->add_option("scenario", flags.scenario_path, "scenario JSON file")
        ->required();
    sub->add_option("--seed", flags.seed, "override the master seed");
    sub->add_option("--out", flags.out_dir, "override the output directory");
    sub->add_option("--format", flags.formats, "output formats (csv, json)")
        ->delimiter(',');
  }

  CommonFlags validate_flags;
  auto* validate = app.add_subcommand("validate", "dry-run schema validation");
  validate->add_option("scenario", validate_flags.scenario_path, "scenario JSON file")
      ->required();

  auto* schema = app.add_subcommand("schema", "print the scenario schema reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (schema->parsed()) {
    std::cout << netres::schema_reference();
    return 0;
  }
  if (validate->parsed()) {
    try {
      netres::ScenarioFile cfg = netres::load_scenario(validate_flags.scenario_path);
      std::cout << "valid: kind=" << netres::to_string(cfg.kind)
                << " seed=" << (cfg.seed_set ? std::to_string(cfg.seed) : "unset")
                << "\n";
      return 0;
    } catch (const netres::ValidationError& err) {
      print_problems(err);
      return kExitValidation;
    }
  }
  for (auto& [kind, flags] : jobs) {
    const std::string name = netres::to_string(kind);
    if (app.get_subcommand(name)->parsed()) {
      return run_scenario(kind, flags);
    }
  }
  std::cerr << "no subcommand selected\n";
  return kExitValidation;
}
