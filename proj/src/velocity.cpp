#include "hbgk/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hbgk {

namespace {

constexpr double kMaxwellianFloor = 1e-300;

void check_size(std::size_t n, const VelocityGrid& grid, const char* who) {
  if (n != grid.size()) throw std::invalid_argument(std::string(who) + ": slice size does not match velocity grid");
}

}  // namespace

VelocityGrid VelocityGrid::midpoint(double v_cut, int n_points) {
  if (!(v_cut > 0.0) || n_points < 1) throw std::invalid_argument("VelocityGrid: need v_cut > 0 and n_points >= 1");
  VelocityGrid g;
  g.v_cut = v_cut;
  g.n_points = n_points;
  g.dv = 2.0 * v_cut / n_points;
  g.points.resize(n_points);
  for (int j = 0; j < n_points; ++j) g.points[j] = -v_cut + (j + 0.5) * g.dv;
  return g;
}

ConservedState discrete_moments(std::span<const double> f, const VelocityGrid& grid) {
  check_size(f.size(), grid, "discrete_moments");
  ConservedState m;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double v = grid.points[j];
    m.rho += f[j];
    m.mom += v * f[j];
    m.energy += 0.5 * v * v * f[j];
  }
  return grid.dv * m;
}

void maxwellian_eval(const ConservedState& U, const VelocityGrid& grid, std::span<double> out) {
  check_size(out.size(), grid, "maxwellian_eval");
  const PrimitiveState w = to_primitive(U);
  const double amp = w.rho / std::sqrt(2.0 * std::numbers::pi * w.T);
  const double inv2T = 0.5 / w.T;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double c = grid.points[j] - w.u;
    out[j] = amp * std::exp(-c * c * inv2T);
  }
}

std::vector<double> maxwellian_eval(const ConservedState& U, const VelocityGrid& grid) {
  std::vector<double> out(grid.size());
  maxwellian_eval(U, grid, out);
  return out;
}

LocalProjector::LocalProjector(const ConservedState& U, const VelocityGrid& grid) { reset(U, grid); }

void LocalProjector::reset(const ConservedState& U, const VelocityGrid& grid) {
  dv_ = grid.dv;
  prim_ = to_primitive(U);
  sqrt_T_ = std::sqrt(prim_.T);
  const std::size_t n = grid.size();
  maxwellian_.resize(n);
  maxwellian_eval(U, grid, maxwellian_);
  V_.resize(n);
  for (std::size_t j = 0; j < n; ++j) V_[j] = (grid.points[j] - prim_.u) / sqrt_T_;

  // Gram matrix of (1, V, V^2) against M on the grid.
  double m[5] = {0, 0, 0, 0, 0};
  for (std::size_t j = 0; j < n; ++j) {
    double p = maxwellian_[j];
    for (double& mk : m) {
      mk += p;
      p *= V_[j];
    }
  }
  for (double& mk : m) mk *= dv_;
  const double g00 = m[0], g01 = m[1], g02 = m[2], g11 = m[2], g12 = m[3], g22 = m[4];
  const double c00 = g11 * g22 - g12 * g12;
  const double c01 = g02 * g12 - g01 * g22;
  const double c02 = g01 * g12 - g02 * g11;
  const double c11 = g00 * g22 - g02 * g02;
  const double c12 = g01 * g02 - g00 * g12;
  const double c22 = g00 * g11 - g01 * g01;
  const double det = g00 * c00 + g01 * c01 + g02 * c02;
  if (!(std::abs(det) > 0.0)) throw NonPhysicalState("LocalProjector: singular moment Gram matrix");
  const double id = 1.0 / det;
  gram_inv_ = {c00 * id, c01 * id, c02 * id, c01 * id, c11 * id, c12 * id, c02 * id, c12 * id, c22 * id};

  bmode_.resize(n);
  for (std::size_t j = 0; j < n; ++j) bmode_[j] = b_function(V_[j]) * maxwellian_[j];
  complement(bmode_, bmode_);
}

std::array<double, 3> LocalProjector::coefficients(std::span<const double> f) const {
  double r0 = 0.0, r1 = 0.0, r2 = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double V = V_[j];
    r0 += f[j];
    r1 += V * f[j];
    r2 += V * V * f[j];
  }
  r0 *= dv_;
  r1 *= dv_;
  r2 *= dv_;
  const auto& gi = gram_inv_;
  return {gi[0] * r0 + gi[1] * r1 + gi[2] * r2, gi[3] * r0 + gi[4] * r1 + gi[5] * r2,
          gi[6] * r0 + gi[7] * r1 + gi[8] * r2};
}

void LocalProjector::complement(std::span<const double> f, std::span<double> out) const {
  if (f.size() != V_.size() || out.size() != V_.size())
    throw std::invalid_argument("LocalProjector::complement: slice size mismatch");
  const auto a = coefficients(f);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double V = V_[j];
    out[j] = f[j] - (a[0] + V * (a[1] + V * a[2])) * maxwellian_[j];
  }
}

void LocalProjector::project(std::span<const double> f, std::span<double> out) const {
  if (f.size() != V_.size() || out.size() != V_.size())
    throw std::invalid_argument("LocalProjector::project: slice size mismatch");
  const auto a = coefficients(f);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double V = V_[j];
    out[j] = (a[0] + V * (a[1] + V * a[2])) * maxwellian_[j];
  }
}

double LocalProjector::weighted_norm(std::span<const double> f) const {
  if (f.size() != V_.size()) throw std::invalid_argument("LocalProjector::weighted_norm: slice size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] == 0.0) continue;
    s += f[j] * f[j] / std::max(maxwellian_[j], kMaxwellianFloor);
  }
  return std::sqrt(dv_ * s / prim_.rho);
}

void LocalProjector::equilibrium_micro(double Tx, std::span<double> out) const {
  if (out.size() != V_.size()) throw std::invalid_argument("LocalProjector::equilibrium_micro: slice size mismatch");
  const double s = -Tx / sqrt_T_;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = s * bmode_[j];
}

std::vector<double> project_complement(std::span<const double> f, const ConservedState& U,
                                       const VelocityGrid& grid) {
  check_size(f.size(), grid, "project_complement");
  LocalProjector p(U, grid);
  std::vector<double> out(f.size());
  p.complement(f, out);
  return out;
}

double weighted_l2_norm(std::span<const double> f, const ConservedState& U, const VelocityGrid& grid) {
  check_size(f.size(), grid, "weighted_l2_norm");
  return LocalProjector(U, grid).weighted_norm(f);
}

double heat_flux_kinetic(std::span<const double> g, const ConservedState& U, const VelocityGrid& grid,
                         double eps) {
  check_size(g.size(), grid, "heat_flux_kinetic");
  const double u = to_primitive(U).u;
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double c = grid.points[j] - u;
    s += 0.5 * c * c * c * g[j];
  }
  return -eps * grid.dv * s;
}

}  // namespace hbgk
