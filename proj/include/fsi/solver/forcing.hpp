#pragma once

#include "fsi/common.hpp"

namespace fsi::solver {

/// Inexact Newton forcing. eta_loose is the ceiling used on the first step,
/// eta_tight the floor.
struct ForcingConfig {
  double eta_loose = 1e-4;
  double eta_tight = 1e-8;
  double gamma = 0.9;
  double exponent = 2.0;
  void validate() const;
};

/// Eisenstat-Walker choice 2: eta = gamma (curr/prev)^exponent, raised to
/// gamma eta_prev^exponent when that exceeds 0.1, then clamped to
/// [eta_tight, eta_loose]. k = 0 returns eta_loose.
double forcing_term(double prev_residual, double curr_residual, const ForcingConfig& cfg, Index k,
                    double eta_prev);

}  // namespace fsi::solver
