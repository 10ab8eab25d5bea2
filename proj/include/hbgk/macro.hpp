#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace hbgk {

/// Ratio of specific heats for a one-dimensional monatomic gas, (d + 2) / d.
inline constexpr double kGamma = 3.0;

/// Macroscopic conserved vector (rho, rho u, E). Also used as the generic
/// three-component flux vector.
struct ConservedState {
  double rho = 0.0;
  double mom = 0.0;
  double energy = 0.0;

  double& operator[](int c) { return c == 0 ? rho : (c == 1 ? mom : energy); }
  double operator[](int c) const { return c == 0 ? rho : (c == 1 ? mom : energy); }

  ConservedState& operator+=(const ConservedState& o) {
    rho += o.rho;
    mom += o.mom;
    energy += o.energy;
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) {
    rho -= o.rho;
    mom -= o.mom;
    energy -= o.energy;
    return *this;
  }
  ConservedState& operator*=(double s) {
    rho *= s;
    mom *= s;
    energy *= s;
    return *this;
  }
  friend ConservedState operator+(ConservedState a, const ConservedState& b) { return a += b; }
  friend ConservedState operator-(ConservedState a, const ConservedState& b) { return a -= b; }
  friend ConservedState operator*(double s, ConservedState a) { return a *= s; }
  friend ConservedState operator*(ConservedState a, double s) { return a *= s; }
  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

using Flux = ConservedState;

struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double T = 0.0;
  double p = 0.0;
};

/// Raised when a state has rho <= 0 or T <= 0. `cell` is -1 when the state is
/// not attached to a mesh cell.
class NonPhysicalState : public std::runtime_error {
 public:
  NonPhysicalState(const std::string& what, int cell = -1)
      : std::runtime_error(what), cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

PrimitiveState to_primitive(const ConservedState& U);
ConservedState from_primitive(double rho, double u, double T);

/// (rho u, rho u^2 + p, (E + p) u)
Flux euler_flux(const ConservedState& U);

/// B(V) = (V^2 - 3) V / 2, the one-dimensional heat-flux generator.
constexpr double b_function(double V) { return 0.5 * (V * V - 3.0) * V; }

struct TransportCoefficients {
  double kappa = 0.0;  // heat conductivity, 3/2 rho T
  double mu = 0.0;     // viscosity scale used by the Burnett indicator, rho T
};

TransportCoefficients transport_coefficients(const PrimitiveState& prim);

Flux lax_friedrichs_flux(const ConservedState& UL, const ConservedState& UR, double lambda_max);

/// |u| + sqrt(gamma T)
double wave_speed(const PrimitiveState& prim);
double max_wave_speed(std::span<const ConservedState> states);

/// Navier-Stokes heat flux eps * kappa * T_x.
double heat_flux_fluid(const PrimitiveState& prim, double Tx, double eps);

}  // namespace hbgk
