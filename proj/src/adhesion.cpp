#include "riso/adhesion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace riso {

double AdhesionParams::default_k_cal(double C0) {
  constexpr double kRefForce = 5.0;    // N
  constexpr double kRefRadius = 0.03;  // m
  constexpr double kRefEnergy = 10.0;  // J/m^2
  return kRefForce / std::sqrt(kRefEnergy * kRefRadius * kRefRadius / C0);
}

void AdhesionParams::validate() const {
  if (!(k_cal > 0.0)) throw std::invalid_argument("adhesion.k_cal must be > 0");
  if (!(C0 > 0.0)) throw std::invalid_argument("adhesion.C0 must be > 0");
  if (!(c_p >= 0.0)) throw std::invalid_argument("adhesion.c_p must be >= 0");
  if (!(P_min < P_max)) throw std::invalid_argument("adhesion.P_min must be < P_max");
  if (!(tau_sw >= 0.0)) throw std::invalid_argument("adhesion.tau_sw must be >= 0");
  if (!(pad_radius > 0.0)) throw std::invalid_argument("adhesion.pad_radius must be > 0");
}

double compliance(double P, const AdhesionParams &params) {
  if (!(P >= params.P_min && P <= params.P_max))
    throw std::out_of_range("pressure " + std::to_string(P) + " psi outside adhesive range");
  return params.C0 * std::exp(params.c_p * (P - params.P_min));
}

double force_capacity(double P, double R, double G_c, const AdhesionParams &params) {
  if (!(R > 0.0)) throw std::invalid_argument("contact radius must be > 0");
  if (!(G_c > 0.0)) throw std::invalid_argument("adhesion energy must be > 0");
  if (P > params.P_release) return 0.0;
  const double r = std::min(R, params.pad_radius);
  return params.k_cal * std::sqrt(G_c * r * r / compliance(P, params));
}

double delayed_pressure(std::span<const PressureCommand> history, double t, double initial_P,
                        double tau_sw) {
  // Tolerance absorbs accumulated rounding in tick times.
  constexpr double kTimeEps = 1e-9;
  const double lookup = t - tau_sw + kTimeEps;
  auto it = std::upper_bound(history.begin(), history.end(), lookup,
                             [](double v, const PressureCommand &c) { return v < c.t; });
  if (it == history.begin()) return initial_P;
  return std::prev(it)->P;
}

double effective_capacity(std::span<const PressureCommand> history, double t, double initial_P,
                          double R, double G_c, const AdhesionParams &params) {
  return force_capacity(delayed_pressure(history, t, initial_P, params.tau_sw), R, G_c, params);
}

}  // namespace riso
