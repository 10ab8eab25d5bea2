#pragma once

#include <array>
#include <span>
#include <vector>

#include "hbgk/macro.hpp"

namespace hbgk {

/// Uniform midpoint grid on (-v_cut, v_cut): v_j = -v_cut + (j + 1/2) dv.
struct VelocityGrid {
  double v_cut = 0.0;
  int n_points = 0;
  double dv = 0.0;
  std::vector<double> points;

  static VelocityGrid midpoint(double v_cut, int n_points);
  std::size_t size() const { return points.size(); }
};

/// dv * sum_j (1, v_j, v_j^2 / 2) f_j
ConservedState discrete_moments(std::span<const double> f, const VelocityGrid& grid);

void maxwellian_eval(const ConservedState& U, const VelocityGrid& grid, std::span<double> out);
std::vector<double> maxwellian_eval(const ConservedState& U, const VelocityGrid& grid);

/// Projection onto span{M, (v-u) M, (v-u)^2 M} for the Maxwellian of one
/// macroscopic state, orthogonal in the discrete weighted inner product
/// (f, g)_M = dv sum_j f_j g_j / M_j. Built once per node and reused for every
/// slice that node projects.
class LocalProjector {
 public:
  LocalProjector() = default;
  LocalProjector(const ConservedState& U, const VelocityGrid& grid);

  /// Rebuild for a new state, reusing storage.
  void reset(const ConservedState& U, const VelocityGrid& grid);

  const PrimitiveState& primitive() const { return prim_; }
  std::span<const double> maxwellian() const { return maxwellian_; }

  /// out = (I - Pi_M) f. `out` may alias `f`.
  void complement(std::span<const double> f, std::span<double> out) const;
  /// out = Pi_M f.
  void project(std::span<const double> f, std::span<double> out) const;

  /// (dv sum_j f_j^2 / M_j / rho)^{1/2}
  double weighted_norm(std::span<const double> f) const;

  /// out = -(I - Pi_M)(B(V) Tx / sqrt(T) M): the first-order Chapman-Enskog
  /// micro part. Its moments vanish on the grid.
  void equilibrium_micro(double Tx, std::span<double> out) const;

  /// (I - Pi_M)(B(V) M), the shape shared by the relaxation source and the
  /// recovered equilibrium micro part.
  std::span<const double> burnett_mode() const { return bmode_; }
  double sqrt_temperature() const { return sqrt_T_; }

 private:
  std::array<double, 3> coefficients(std::span<const double> f) const;

  double dv_ = 0.0;
  PrimitiveState prim_{};
  double sqrt_T_ = 1.0;
  std::vector<double> maxwellian_;
  std::vector<double> V_;         // (v_j - u) / sqrt(T)
  std::vector<double> bmode_;     // (I - Pi)(B(V) M), cached
  std::array<double, 9> gram_inv_{};
};

std::vector<double> project_complement(std::span<const double> f, const ConservedState& U,
                                       const VelocityGrid& grid);

double weighted_l2_norm(std::span<const double> f, const ConservedState& U, const VelocityGrid& grid);

/// Kinetic heat flux -eps <(v - u)^3 / 2 g>, signed to agree with
/// heat_flux_fluid in the Navier-Stokes limit.
double heat_flux_kinetic(std::span<const double> g, const ConservedState& U, const VelocityGrid& grid,
                         double eps);

}  // namespace hbgk
