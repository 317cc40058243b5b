// bench: benchmark sweeps, acceptance checks and system export.
//
// Exit codes: 0 success, 1 config or usage error, 2 solver failure,
// 3 acceptance failure.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fsi/bench/acceptance.hpp"
#include "fsi/bench/config.hpp"
#include "fsi/bench/problems.hpp"
#include "fsi/bench/report.hpp"
#include "fsi/bench/sweep.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_solver = 2;
constexpr int exit_acceptance = 3;

fsi::bench::BenchConfig load(const std::string& path) {
  auto cfg = fsi::bench::parse_config(path);
  for (const auto& note : cfg.notes) std::cerr << "note: " << note << '\n';
  return cfg;
}

int cmd_run(const std::string& path, bool echo) {
  const auto cfg = load(path);
  if (echo) {
    std::cout << fsi::bench::echo_config(cfg);
    return exit_ok;
  }
  const auto report = fsi::bench::run_sweep(cfg, &std::cout);
  std::cout << '\n';
  fsi::bench::emit_report(std::cout, report, fsi::bench::ReportFormat::table);
  std::cout << "\nreport written to " << cfg.output << "/report.{csv,txt,dat}\n";
  return report.any_failed() ? exit_solver : exit_ok;
}

int cmd_verify(const std::vector<int>& only) {
  for (int id : only)
    if (id < 1 || id > fsi::bench::n_criteria) {
      std::cerr << "error: no criterion " << id << '\n';
      return exit_config;
    }
  const auto results = fsi::bench::run_acceptance(std::cout, only);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << '/' << results.size() << " criteria passed\n";
  return failed == 0 ? exit_ok : exit_acceptance;
}

int cmd_export(const std::string& path, const std::string& dir) {
  const auto cfg = load(path);
  fsi::bench::export_system(cfg, dir);
  std::cout << "system written to " << dir << '\n';
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FSI preconditioner benchmarks"};
  app.require_subcommand(1);

  std::string config, dir;
  bool echo = false;
  std::vector<int> only;

  auto* run = app.add_subcommand("run", "run the sweep described by a config file");
  run->add_option("config", config, "config file")->required();
  run->add_flag("--echo", echo, "print the effective configuration and exit");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--only", only, "criterion numbers to run (default: all)")->delimiter(',');

  auto* exp = app.add_subcommand("export-system", "write the first linear system as Matrix Market files");
  exp->add_option("config", config, "config file")->required();
  exp->add_option("dir", dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*run) return cmd_run(config, echo);
    if (*verify) return cmd_verify(only);
    if (*exp) return cmd_export(config, dir);
  } catch (const fsi::bench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver;
  }
  return exit_config;
}
