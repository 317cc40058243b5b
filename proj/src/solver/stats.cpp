#include "fsi/solver/stats.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "fsi/la/matrix_market.hpp"

namespace fsi::solver {

Index TimestepStats::gmres_failures() const {
  Index n = 0;
  for (const auto& s : per_newton) n += s.gmres_converged ? 0 : 1;
  return n;
}

Index SolveStats::total_newton() const {
  Index n = 0;
  for (const auto& t : per_timestep) n += t.newton_iters;
  return n;
}

Index SolveStats::total_gmres() const {
  Index n = 0;
  for (const auto& t : per_timestep)
    for (const auto& s : t.per_newton) n += s.gmres_iters;
  return n;
}

Index SolveStats::gmres_failures() const {
  Index n = 0;
  for (const auto& t : per_timestep) n += t.gmres_failures();
  return n;
}

double SolveStats::avg_gmres_per_newton() const {
  const Index n = total_newton();
  return n == 0 ? 0.0 : double(total_gmres()) / double(n);
}

double SolveStats::avg_newton_per_step() const {
  return per_timestep.empty() ? 0.0 : double(total_newton()) / double(per_timestep.size());
}

double SolveStats::setup_seconds() const {
  double s = 0.0;
  for (const auto& t : per_timestep) s += t.setup_seconds;
  return s;
}

double SolveStats::solve_seconds() const {
  double s = 0.0;
  for (const auto& t : per_timestep) s += t.solve_seconds;
  return s;
}

void write_stats_csv(std::ostream& os, const SolveStats& s) {
  os << "timestep,newton_idx,eta,gmres_iters,rel_residual,setup_s,solve_s\n";
  for (Index t = 0; t < s.per_timestep.size(); ++t) {
    const auto& ts = s.per_timestep[t];
    for (Index k = 0; k < ts.per_newton.size(); ++k) {
      const auto& n = ts.per_newton[k];
      os << t << ',' << k << ',' << la::format_double(n.eta) << ',' << n.gmres_iters << ','
         << la::format_double(n.rel_residual) << ',' << la::format_double(n.setup_seconds) << ','
         << la::format_double(n.solve_seconds) << '\n';
    }
  }
}

std::vector<StatsRow> read_stats_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "timestep,newton_idx,eta,gmres_iters,rel_residual,setup_s,solve_s") {
    throw Error("stats csv: unexpected header");
  }
  std::vector<StatsRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    StatsRow r;
    char c1, c2, c3, c4, c5, c6;
    ls >> r.timestep >> c1 >> r.newton_idx >> c2 >> r.eta >> c3 >> r.gmres_iters >> c4 >> r.rel_residual >> c5 >>
        r.setup_s >> c6 >> r.solve_s;
    if (!ls || c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',' || c6 != ',') {
      throw Error("stats csv: malformed row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

double avg_gmres_per_newton(const std::vector<StatsRow>& rows) {
  if (rows.empty()) return 0.0;
  Index total = 0;
  for (const auto& r : rows) total += r.gmres_iters;
  return double(total) / double(rows.size());
}

}  // namespace fsi::solver
