#include "fsi/bench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "fsi/la/matrix_market.hpp"

namespace fsi::bench {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return std::isnan(v) ? "nan" : la::format_double(v); }

double parse_num(const std::string& s, Index line) {
  if (s == "nan") return nan;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw Error("report csv:" + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

/// Preconditioner labels in display order: monolithic variants first, then
/// SIMPLE, SIMPLEC, then anything else in first-seen order.
std::vector<std::string> precond_columns(const BenchReport& r) {
  std::vector<std::string> labels;
  for (const auto& row : r.rows)
    if (std::find(labels.begin(), labels.end(), row.precond) == labels.end()) labels.push_back(row.precond);
  const auto rank = [](const std::string& s) {
    if (s.find("monolithic") != std::string::npos) return 0;
    if (s.find("simplec") != std::string::npos) return 2;
    if (s.find("simple") != std::string::npos) return 1;
    return 3;
  };
  std::stable_sort(labels.begin(), labels.end(),
                   [&](const std::string& a, const std::string& b) { return rank(a) < rank(b); });
  return labels;
}

std::string fmt(const char* f, double v) {
  if (std::isnan(v)) return "failed";
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

void emit_csv(std::ostream& os, const BenchReport& r) {
  os << report_csv_header << '\n';
  for (const auto& row : r.rows)
    os << row.config << ',' << row.n_subdomains << ',' << row.precond << ',' << num(row.avg_iter) << ','
       << num(row.avg_newton) << ',' << num(row.setup_s) << ',' << num(row.solve_s) << '\n';
}

void emit_table(std::ostream& os, const BenchReport& r) {
  const auto cols = precond_columns(r);
  // Group keys in first-seen order.
  std::vector<std::pair<std::string, Index>> keys;
  std::map<std::pair<std::string, Index>, std::map<std::string, const ReportRow*>> cells;
  for (const auto& row : r.rows) {
    const auto key = std::make_pair(row.config, row.n_subdomains);
    if (!cells.count(key)) keys.push_back(key);
    cells[key][row.precond] = &row;
  }
  std::size_t wc = 6;
  for (const auto& k : keys) wc = std::max(wc, k.first.size());
  constexpr std::size_t wn = 5, wf = 10;
  const std::size_t group = 3 * wf;

  os << std::string(wc, ' ') << ' ' << pad("", wn);
  for (const auto& c : cols) {
    std::string title = c.size() > group ? c.substr(0, group) : c;
    os << " |" << pad(title, group);
  }
  os << '\n' << pad("config", wc) << ' ' << pad("N", wn);
  for (std::size_t i = 0; i < cols.size(); ++i) os << " |" << pad("avg iter", wf) << pad("setup", wf) << pad("solve", wf);
  os << '\n' << std::string(wc + 1 + wn, '-');
  for (std::size_t i = 0; i < cols.size(); ++i) os << "-+" << std::string(group, '-');
  os << '\n';
  for (const auto& k : keys) {
    os << pad(k.first, wc) << ' ' << pad(std::to_string(k.second), wn);
    for (const auto& c : cols) {
      const auto& m = cells[k];
      const auto it = m.find(c);
      if (it == m.end()) {
        os << " |" << pad("-", wf) << pad("-", wf) << pad("-", wf);
        continue;
      }
      const ReportRow& row = *it->second;
      os << " |" << pad(fmt("%.2f", row.avg_iter), wf) << pad(fmt("%.3f", row.setup_s), wf)
         << pad(fmt("%.3f", row.solve_s), wf);
    }
    os << '\n';
  }
}

void emit_gnuplot(std::ostream& os, const BenchReport& r) {
  bool first = true;
  for (const auto& c : precond_columns(r)) {
    if (!first) os << "\n\n";
    first = false;
    os << "# precond " << c << "\n# config N avg_iter avg_newton setup_s solve_s\n";
    for (const auto& row : r.rows) {
      if (row.precond != c) continue;
      os << row.config << ' ' << row.n_subdomains << ' ' << num(row.avg_iter) << ' ' << num(row.avg_newton) << ' '
         << num(row.setup_s) << ' ' << num(row.solve_s) << '\n';
    }
  }
}

}  // namespace

bool BenchReport::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.failed(); });
}

ReportRow make_row(const std::string& config, Index n_subdomains, const std::string& precond,
                   const solver::SolveStats& stats) {
  return {config,
          n_subdomains,
          precond,
          stats.avg_gmres_per_newton(),
          stats.avg_newton_per_step(),
          stats.setup_seconds(),
          stats.solve_seconds(),
          {}};
}

ReportRow failed_row(const std::string& config, Index n_subdomains, const std::string& precond,
                     const std::string& error) {
  return {config, n_subdomains, precond, nan, nan, nan, nan, error.empty() ? "failed" : error};
}

void emit_report(std::ostream& os, const BenchReport& report, ReportFormat format) {
  if (report.rows.empty()) throw Error("emit_report: empty report");
  switch (format) {
    case ReportFormat::csv: emit_csv(os, report); break;
    case ReportFormat::table: emit_table(os, report); break;
    case ReportFormat::gnuplot: emit_gnuplot(os, report); break;
  }
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
  std::ostringstream os;
  emit_report(os, report, format);
  return os.str();
}

void write_report(const BenchReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::pair<const char*, ReportFormat> files[] = {
      {"report.csv", ReportFormat::csv}, {"report.txt", ReportFormat::table}, {"report.dat", ReportFormat::gnuplot}};
  for (const auto& [name, format] : files) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    emit_report(os, report, format);
    if (!os) throw Error("write to '" + path + "' failed");
  }
}

BenchReport parse_report_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != report_csv_header) throw Error("report csv:1: unexpected header");
  BenchReport r;
  Index lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 7) throw Error("report csv:" + std::to_string(lineno) + ": expected 7 fields");
    ReportRow row;
    row.config = f[0];
    const double n = parse_num(f[1], lineno);
    if (!(n >= 0) || n != std::floor(n)) throw Error("report csv:" + std::to_string(lineno) + ": bad N");
    row.n_subdomains = static_cast<Index>(n);
    row.precond = f[2];
    row.avg_iter = parse_num(f[3], lineno);
    row.avg_newton = parse_num(f[4], lineno);
    row.setup_s = parse_num(f[5], lineno);
    row.solve_s = parse_num(f[6], lineno);
    if (std::isnan(row.avg_iter)) row.error = "failed";
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace fsi::bench
