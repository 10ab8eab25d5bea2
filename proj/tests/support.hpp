#pragma once

// Small fixtures shared by the unit tests.

#include <cmath>
#include <functional>
#include <random>

#include "hbgk/dg_kernels.hpp"
#include "hbgk/mesh.hpp"
#include "hbgk/quadrature.hpp"
#include "hbgk/velocity.hpp"

namespace hbgk::testing {

struct Setup {
  NodalBasis basis;
  Mesh1D mesh;
  VelocityGrid grid;
};

inline Setup make_setup(int nx, BoundaryKind bc, double eps = 1e-2, double a = 0.0, double b = 1.0,
                        double v_cut = 6.0, int nv = 60, int order = 2) {
  Setup s;
  s.basis = build_nodal_basis(gauss_legendre_rule(order + 1));
  s.mesh = Mesh1D::uniform(a, b, nx, bc, s.basis, EpsilonProfile::constant_value(eps));
  s.grid = VelocityGrid::midpoint(v_cut, nv);
  return s;
}

inline StateField sample_state(const Mesh1D& mesh, const std::function<ConservedState(double)>& f) {
  StateField U(mesh.n_cells, mesh.n_nodes);
  for (int i = 0; i < mesh.n_cells; ++i)
    for (int k = 0; k < mesh.n_nodes; ++k) U(i, k) = f(mesh.node_x(i, k));
  return U;
}

inline ScalarField sample_scalar(const Mesh1D& mesh, const std::function<double(double)>& f) {
  ScalarField s(mesh.n_cells, mesh.n_nodes);
  for (int i = 0; i < mesh.n_cells; ++i)
    for (int k = 0; k < mesh.n_nodes; ++k) s(i, k) = f(mesh.node_x(i, k));
  return s;
}

/// Smooth periodic state on [0, 1] with non-trivial rho, u and T.
inline StateField smooth_state(const Mesh1D& mesh) {
  return sample_state(mesh, [](double x) {
    const double w = 2.0 * M_PI * x;
    return from_primitive(1.0 + 0.3 * std::sin(w), 0.2 * std::cos(w), 1.0 + 0.25 * std::sin(w + 0.7));
  });
}

/// Random micro field with its moments removed node by node.
inline KineticField random_micro(const StateField& U, const VelocityGrid& grid, unsigned seed, double scale = 0.1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const int nv = static_cast<int>(grid.size());
  KineticField g(U.n_cells(), U.n_nodes(), nv);
  std::vector<double> f(nv);
  for (int i = 0; i < U.n_cells(); ++i)
    for (int k = 0; k < U.n_nodes(); ++k) {
      const auto M = maxwellian_eval(U(i, k), grid);
      for (int j = 0; j < nv; ++j) f[j] = scale * d(rng) * M[j];
      const auto c = project_complement(f, U(i, k), grid);
      std::copy(c.begin(), c.end(), g.slice(i, k).begin());
    }
  return g;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const StateField& a, const StateField& b) {
  double m = 0.0;
  for (int i = 0; i < a.n_cells(); ++i)
    for (int k = 0; k < a.n_nodes(); ++k)
      for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(a(i, k)[c] - b(i, k)[c]));
  return m;
}

}  // namespace hbgk::testing
