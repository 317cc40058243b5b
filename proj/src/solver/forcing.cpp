#include "fsi/solver/forcing.hpp"

#include <algorithm>
#include <cmath>

namespace fsi::solver {

void ForcingConfig::validate() const {
  if (!(eta_tight > 0.0 && eta_tight < eta_loose && eta_loose < 1.0)) {
    throw Error("forcing: need 0 < eta_tight < eta_loose < 1");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("forcing: gamma must lie in (0, 1]");
  if (!(exponent > 1.0 && exponent <= 2.0)) throw Error("forcing: exponent must lie in (1, 2]");
}

double forcing_term(double prev_residual, double curr_residual, const ForcingConfig& cfg, Index k,
                    double eta_prev) {
  if (k == 0) return cfg.eta_loose;
  if (!(prev_residual > 0.0) || !(curr_residual > 0.0)) throw Error("forcing_term: residual norms must be positive");
  double eta = cfg.gamma * std::pow(curr_residual / prev_residual, cfg.exponent);
  const double guard = cfg.gamma * std::pow(eta_prev, cfg.exponent);
  if (guard > 0.1) eta = std::max(eta, guard);
  return std::clamp(eta, cfg.eta_tight, cfg.eta_loose);
}

}  // namespace fsi::solver
