#include "hbgk/macro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hbgk {

PrimitiveState to_primitive(const ConservedState& U) {
  if (!(U.rho > 0.0)) {
    std::ostringstream os;
    os << "non-positive density rho=" << U.rho;
    throw NonPhysicalState(os.str());
  }
  const double u = U.mom / U.rho;
  const double T = (2.0 * U.energy - U.rho * u * u) / U.rho;
  if (!(T > 0.0)) {
    std::ostringstream os;
    os << "non-positive temperature T=" << T << " (rho=" << U.rho << ")";
    throw NonPhysicalState(os.str());
  }
  return {U.rho, u, T, U.rho * T};
}

ConservedState from_primitive(double rho, double u, double T) {
  return {rho, rho * u, 0.5 * rho * u * u + 0.5 * rho * T};
}

Flux euler_flux(const ConservedState& U) {
  // Interface traces of a P^K state may dip below T = 0 between valid nodes;
  // the flux itself only needs rho > 0.
  if (!(U.rho > 0.0)) {
    std::ostringstream os;
    os << "non-positive density rho=" << U.rho;
    throw NonPhysicalState(os.str());
  }
  const double u = U.mom / U.rho;
  const double p = (kGamma - 1.0) * (U.energy - 0.5 * U.mom * u);
  return {U.mom, U.mom * u + p, (U.energy + p) * u};
}

TransportCoefficients transport_coefficients(const PrimitiveState& prim) {
  return {1.5 * prim.rho * prim.T, prim.rho * prim.T};
}

Flux lax_friedrichs_flux(const ConservedState& UL, const ConservedState& UR, double lambda_max) {
  return 0.5 * (euler_flux(UL) + euler_flux(UR) - lambda_max * (UR - UL));
}

double wave_speed(const PrimitiveState& prim) {
  return std::abs(prim.u) + std::sqrt(kGamma * prim.T);
}

double max_wave_speed(std::span<const ConservedState> states) {
  double lam = 0.0;
  for (const auto& U : states) lam = std::max(lam, wave_speed(to_primitive(U)));
  return lam;
}

double heat_flux_fluid(const PrimitiveState& prim, double Tx, double eps) {
  return eps * transport_coefficients(prim).kappa * Tx;
}

}  // namespace hbgk
