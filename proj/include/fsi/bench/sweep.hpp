#pragma once

#include <iosfwd>
#include <string>

#include "fsi/bench/config.hpp"
#include "fsi/bench/report.hpp"

namespace fsi::bench {

/// Runs every cell of sweep_cells(cfg) in order. Each cell's per-Newton
/// statistics go to <output>/cells/<config>-N<N>-<precond>.csv and the
/// report files are rewritten after every cell. A cell that throws becomes
/// a failed row and the sweep moves on. Progress lines go to `log` when set.
BenchReport run_sweep(const BenchConfig& cfg, std::ostream* log = nullptr);

/// Path of a cell's statistics file relative to the output directory.
std::string cell_stats_path(const ReportRow& row);

}  // namespace fsi::bench
