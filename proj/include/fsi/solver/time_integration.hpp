#pragma once

#include <span>

#include "fsi/common.hpp"

namespace fsi::solver {

/// Backward differentiation: y'(t_{n+1}) ~ (a0 y_{n+1} + a1 y_n + a2 y_{n-1}) / dt.
struct BdfCoefficients {
  double a0;
  double a1;
  double a2;
};

/// order 1 (backward Euler) or 2.
BdfCoefficients bdf_coefficients(int order);

/// Order used at a given 0-based step: BDF-1 on the first step, BDF-2 after.
inline int bdf_order_for_step(Index step) { return step == 0 ? 1 : 2; }

/// a1*y_n + a2*y_{n-1}
Vector bdf_history(const BdfCoefficients& c, std::span<const double> y_n,
                   std::span<const double> y_nm1);

struct NewmarkParams {
  double beta = 0.25;
  double gamma = 0.5;
};

struct NewmarkState {
  Vector d;
  Vector v;
  Vector a;
};

/// d + dt v + dt^2 (1/2 - beta) a; the new acceleration is
/// (d_new - predictor) / (beta dt^2).
Vector newmark_predictor(const NewmarkState& s, double dt, const NewmarkParams& p);

/// Velocity at the new level as a function of the new displacement.
Vector newmark_velocity(const NewmarkState& s, std::span<const double> d_new, double dt,
                        const NewmarkParams& p);

/// d v_new / d d_new = gamma / (beta dt)
inline double newmark_velocity_factor(double dt, const NewmarkParams& p) {
  return p.gamma / (p.beta * dt);
}

NewmarkState newmark_advance(const NewmarkState& s, std::span<const double> d_new, double dt,
                             const NewmarkParams& p);

}  // namespace fsi::solver
