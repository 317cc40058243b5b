#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fsi/common.hpp"
#include "fsi/fluid/fluid_precond.hpp"
#include "fsi/fe/params.hpp"
#include "fsi/fluid/inner_solver.hpp"
#include "fsi/schwarz/schwarz.hpp"
#include "fsi/solver/newton.hpp"

namespace fsi::bench {

/// Malformed or invalid configuration. `line` is 0 when the problem is not
/// tied to one line (missing file, cross-key checks).
class ConfigError : public Error {
public:
  ConfigError(const std::string& what, Index line) : Error(what), line_(line) {}
  Index line() const { return line_; }

private:
  Index line_;
};

enum class Problem { fsi_channel, stokes_channel, navier_stokes_channel, poisson, synthetic };

std::string_view to_string(Problem p);

/// Preconditioner of the fluid part: on the fluid channels it acts on the
/// whole fluid system, on the FSI channel it is FaCSI's inner F_II solve.
using FluidPrecond = fluid::FluidPrecondKind;

struct BenchConfig {
  Problem problem = Problem::fsi_channel;

  // Channel mesh (cm). Poisson uses a unit square with
  // cells_per_subdomain * sqrt(N) cells per side and a box partition.
  Index nx = 24;
  Index ny_fluid = 6;
  Index ny_solid = 2;
  double length = 1.0;
  double height = 0.3;
  double thickness = 0.1;
  Index cells_per_subdomain = 8;
  /// Synthetic block system sizes.
  Index synthetic_solid = 20, synthetic_geometry = 20, synthetic_velocity = 40, synthetic_pressure = 10,
        synthetic_interface = 6;

  std::vector<Index> n_subdomains{4};
  Index overlap = 1;
  std::vector<FluidPrecond> fluid_precond{FluidPrecond::monolithic};
  schwarz::Levels levels = schwarz::Levels::two;
  schwarz::CoarseKind coarse = schwarz::CoarseKind::gdsw;  ///< Poisson
  schwarz::CoarseKind coarse_velocity = schwarz::CoarseKind::gdsw;
  schwarz::CoarseKind coarse_pressure = schwarz::CoarseKind::rgdsw;
  schwarz::CoarseKind coarse_solid = schwarz::CoarseKind::gdsw;
  schwarz::CoarseKind coarse_geometry = schwarz::CoarseKind::gdsw;
  double simple_alpha = 1.0;

  std::vector<double> flow_rates{2.0};
  double ramp_time = 0.1;
  Index n_steps = 20;
  std::vector<std::uint64_t> seeds{7};
  std::string output = "bench_out";

  fe::PhysicalParams physics;
  solver::NewtonConfig newton;

  /// Assemble the ALE shape-derivative block D of the FSI Jacobian. Off:
  /// D = 0 and Newton becomes a quasi-Newton iteration.
  bool shape_derivative = false;

  fluid::InnerKind inner_solid = fluid::InnerKind::schwarz;
  fluid::InnerKind inner_geometry = fluid::InnerKind::schwarz;

  /// Accepted but noteworthy settings, one message each.
  std::vector<std::string> notes;

  /// Throws ConfigError (line 0) when a cross-key invariant fails.
  void validate() const;
};

/// Plain-text `key = value` lines; `[section]` headers prefix the following
/// keys with `section.`; `#` starts a comment; lists are comma separated.
/// Unknown keys, lines without '=', bad and out-of-range values raise
/// ConfigError with the line number. `source` names the input in messages.
BenchConfig parse_config_text(std::string_view text, const std::string& source = "config");
BenchConfig parse_config(const std::string& path);

/// Every key with its effective value, one `key=value` per line, in a form
/// parse_config_text accepts.
std::string echo_config(const BenchConfig& cfg);

}  // namespace fsi::bench
