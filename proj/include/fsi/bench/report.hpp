#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/solver/stats.hpp"

namespace fsi::bench {

/// One sweep cell. A failed cell keeps its identity and has NaN in every
/// numeric field.
struct ReportRow {
  std::string config;
  Index n_subdomains = 0;
  std::string precond;
  double avg_iter = 0.0;  ///< GMRES iterations per Newton step, pooled over steps
  double avg_newton = 0.0;  ///< Newton iterations per time step
  double setup_s = 0.0;
  double solve_s = 0.0;
  std::string error;  ///< empty unless failed

  bool failed() const { return !error.empty(); }
};

struct BenchReport {
  std::vector<ReportRow> rows;
  bool any_failed() const;
};

ReportRow make_row(const std::string& config, Index n_subdomains, const std::string& precond,
                   const solver::SolveStats& stats);
ReportRow failed_row(const std::string& config, Index n_subdomains, const std::string& precond,
                     const std::string& error);

inline constexpr const char* report_csv_header = "config,N,precond,avg_iter,avg_newton,setup_s,solve_s";

enum class ReportFormat { csv, table, gnuplot };

/// csv: header plus one line per row, shortest round-trip decimals.
/// table: rows grouped by (config, N), one column group (avg iter, setup,
/// solve) per preconditioner side by side, monolithic first.
/// gnuplot: one whitespace-separated index block per preconditioner.
/// Throws Error on an empty report.
void emit_report(std::ostream& os, const BenchReport& report, ReportFormat format);
std::string emit_report(const BenchReport& report, ReportFormat format);

/// Writes report.csv, report.txt and report.dat into `dir` (created when
/// missing). Throws Error when a file cannot be written.
void write_report(const BenchReport& report, const std::string& dir);

/// Inverse of the csv format. Error messages carry the line number. Row
/// errors are not serialized; NaN rows come back with error "failed".
BenchReport parse_report_csv(std::istream& is);

}  // namespace fsi::bench
