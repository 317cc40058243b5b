#include "fsi/solver/time_integration.hpp"

#include <string>

namespace fsi::solver {

BdfCoefficients bdf_coefficients(int order) {
  switch (order) {
    case 1: return {1.0, -1.0, 0.0};
    case 2: return {1.5, -2.0, 0.5};
    default: throw Error("bdf_coefficients: unsupported order " + std::to_string(order));
  }
}

Vector bdf_history(const BdfCoefficients& c, std::span<const double> y_n,
                   std::span<const double> y_nm1) {
  if (y_n.size() != y_nm1.size()) throw DimensionError("bdf_history: length mismatch");
  Vector h(y_n.size());
  for (Index i = 0; i < h.size(); ++i) h[i] = c.a1 * y_n[i] + c.a2 * y_nm1[i];
  return h;
}

Vector newmark_predictor(const NewmarkState& s, double dt, const NewmarkParams& p) {
  Vector pred(s.d.size());
  for (Index i = 0; i < pred.size(); ++i) {
    pred[i] = s.d[i] + dt * s.v[i] + dt * dt * (0.5 - p.beta) * s.a[i];
  }
  return pred;
}

Vector newmark_velocity(const NewmarkState& s, std::span<const double> d_new, double dt,
                        const NewmarkParams& p) {
  if (d_new.size() != s.d.size()) throw DimensionError("newmark_velocity: length mismatch");
  Vector v(s.d.size());
  const double f = newmark_velocity_factor(dt, p);
  for (Index i = 0; i < v.size(); ++i) {
    v[i] = f * (d_new[i] - s.d[i]) + (1.0 - p.gamma / p.beta) * s.v[i] +
           dt * (1.0 - p.gamma / (2.0 * p.beta)) * s.a[i];
  }
  return v;
}

NewmarkState newmark_advance(const NewmarkState& s, std::span<const double> d_new, double dt,
                             const NewmarkParams& p) {
  const Vector pred = newmark_predictor(s, dt, p);
  NewmarkState next;
  next.d.assign(d_new.begin(), d_new.end());
  next.a.resize(s.d.size());
  next.v.resize(s.d.size());
  for (Index i = 0; i < s.d.size(); ++i) {
    next.a[i] = (d_new[i] - pred[i]) / (p.beta * dt * dt);
    next.v[i] = s.v[i] + dt * ((1.0 - p.gamma) * s.a[i] + p.gamma * next.a[i]);
  }
  return next;
}

}  // namespace fsi::solver
