#pragma once

namespace fsi::fe {

/// Internal units are cm, s and kg, so stresses are kg/(cm s^2).
inline constexpr double kpa = 10.0;

/// Fluid and wall parameters. Defaults are the artery values; pressures and
/// moduli are given in kPa and converted with `kpa` at assembly time.
struct PhysicalParams {
  double nu_f = 0.0291;     ///< kinematic viscosity, cm^2/s
  double rho_f = 1.03e-3;   ///< kg/cm^3
  double rho_s = 1.0e-3;    ///< kg/cm^3
  double poisson = 0.49;
  double mu_s = 127.52;     ///< shear modulus, kPa
  double E = 380.0;         ///< Young's modulus, kPa
  double p_ref = 10.66;     ///< outlet reference pressure, kPa
  double dt = 0.001;        ///< s
  double flow_rate = 2.0;   ///< cm^2/s through the full (mirrored) 2D channel
  /// Outlet backflow stabilization: adds -beta rho_f min(u.n, 0) u to the
  /// outlet traction, which removes the kinetic energy carried in by
  /// reversed flow. 0 turns it off.
  double backflow_beta = 1.0;

  double mu_f() const { return rho_f * nu_f; }
  /// Plane-strain Lame parameters from (E, poisson), internal units.
  double lame_lambda() const { return E * kpa * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson)); }
  double lame_mu() const { return E * kpa / (2.0 * (1.0 + poisson)); }

  /// Throws fsi::Error unless every value is positive, poisson < 0.5 and
  /// backflow_beta >= 0.
  void validate() const;
};

}  // namespace fsi::fe
