#pragma once

#include <span>

namespace riso {

/// Parameters of the pressure-tunable adhesive pad.
///
/// Capacity follows F_c = k_cal * sqrt(G_c * R'^2 / C(P)) with
/// C(P) = C0 * exp(c_p * (P - P_min)); R' = min(R, pad_radius).
struct AdhesionParams {
  double C0 = 1e-4;          // m/N, compliance at P_min
  double c_p = 0.5;          // 1/psi
  double P_min = -13.0;      // psi
  double P_max = 2.9;        // psi
  double tau_sw = 0.1;       // s, switching latency
  double pad_radius = 0.03;  // m, active adhesive radius
  double P_release = 2.9;    // psi; capacity is zero strictly above this
  double k_cal = default_k_cal(1e-4);

  /// Calibration so that F_c(P_min, R = 30 mm, G_c = 10 J/m^2) = 5 N.
  static double default_k_cal(double C0);

  void validate() const;
};

/// Compliance of the pad at chamber pressure `P` (m/N). Throws
/// std::out_of_range when P lies outside [P_min, P_max].
double compliance(double P, const AdhesionParams &params);

/// Adhesive force capacity in newtons. Returns 0 above `P_release`. Throws
/// std::invalid_argument for non-positive R or G_c.
double force_capacity(double P, double R, double G_c, const AdhesionParams &params);

/// A pressure command issued at time `t` (seconds).
struct PressureCommand {
  double t = 0.0;
  double P = 0.0;
};

/// Pressure acting on the pad at time `t`: the command in effect at t - tau_sw
/// (pure transport delay). Before the first command, `initial_P` applies.
/// `history` must be sorted by time.
double delayed_pressure(std::span<const PressureCommand> history, double t, double initial_P,
                        double tau_sw);

/// Force capacity evaluated at the delayed pressure.
double effective_capacity(std::span<const PressureCommand> history, double t, double initial_P,
                          double R, double G_c, const AdhesionParams &params);

}  // namespace riso
