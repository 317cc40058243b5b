#include "fsi/bench/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "fsi/bench/problems.hpp"

namespace fsi::bench {

std::string cell_stats_path(const ReportRow& row) {
  return "cells/" + row.config + "-N" + std::to_string(row.n_subdomains) + "-" + row.precond + ".csv";
}

BenchReport run_sweep(const BenchConfig& cfg, std::ostream* log) {
  namespace fs = std::filesystem;
  cfg.validate();
  fs::create_directories(fs::path(cfg.output) / "cells");
  BenchReport report;
  const auto cells = sweep_cells(cfg);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    const std::string id = config_id(cfg, cell);
    const std::string label = precond_label(cfg, cell);
    if (log) *log << '[' << i + 1 << '/' << cells.size() << "] " << id << " N=" << cell.n_subdomains << ' ' << label
                  << std::flush;
    solver::SolveStats stats;
    std::string error;
    try {
      stats = run_cell(cfg, cell);
    } catch (const solver::NewtonFailure& e) {
      stats = e.stats();
      error = e.what();
    } catch (const Error& e) {
      error = e.what();
    }
    ReportRow row = error.empty() ? make_row(id, cell.n_subdomains, label, stats)
                                  : failed_row(id, cell.n_subdomains, label, error);
    const fs::path stats_path = fs::path(cfg.output) / cell_stats_path(row);
    std::ofstream os(stats_path);
    if (!os) throw Error("cannot open '" + stats_path.string() + "' for writing");
    solver::write_stats_csv(os, stats);
    if (log) {
      if (row.failed())
        *log << "  FAILED: " << row.error << '\n';
      else
        *log << "  avg_iter=" << row.avg_iter << " avg_newton=" << row.avg_newton << '\n';
    }
    report.rows.push_back(std::move(row));
    write_report(report, cfg.output);
  }
  return report;
}

}  // namespace fsi::bench
