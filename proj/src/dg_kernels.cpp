#include "hbgk/dg_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hbgk/parallel.hpp"

namespace hbgk {

namespace {

// Values on the two sides of every face, boundary ghosts included.
template <class T, class Mirror>
void face_sides(const NodalField<T>& f, const Mesh1D& mesh, const NodalBasis& basis, Mirror mirror,
                std::vector<T>& minus, std::vector<T>& plus) {
  const int n = mesh.n_cells;
  minus.assign(n + 1, T{});
  plus.assign(n + 1, T{});
  for (int i = 0; i < n; ++i) {
    minus[i + 1] = f.right_trace(i, basis);
    plus[i] = f.left_trace(i, basis);
  }
  switch (mesh.boundary) {
    case BoundaryKind::periodic:
      minus[0] = minus[n];
      plus[n] = plus[0];
      break;
    case BoundaryKind::outflow:
      minus[0] = plus[0];
      plus[n] = minus[n];
      break;
    case BoundaryKind::reflective:
      minus[0] = mirror(plus[0]);
      plus[n] = mirror(minus[n]);
      break;
  }
}

double slice_trace(const KineticField& g, const std::vector<double>& trace, int i, int j) {
  double s = 0.0;
  for (int k = 0; k < g.n_nodes(); ++k) s += trace[k] * g.slice(i, k)[j];
  return s;
}

}  // namespace

std::vector<int> all_cells(int n_cells) {
  std::vector<int> c(n_cells);
  std::iota(c.begin(), c.end(), 0);
  return c;
}

NodalField<PrimitiveState> nodal_primitives(const StateField& U) {
  NodalField<PrimitiveState> out(U.n_cells(), U.n_nodes());
  for (int i = 0; i < U.n_cells(); ++i)
    for (int k = 0; k < U.n_nodes(); ++k) {
      try {
        out(i, k) = to_primitive(U(i, k));
      } catch (const NonPhysicalState& e) {
        throw NonPhysicalState(std::string(e.what()) + " in cell " + std::to_string(i), i);
      }
    }
  return out;
}

std::vector<Flux> lax_friedrichs_faces(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                                       double lambda_max) {
  std::vector<ConservedState> minus, plus;
  face_sides(U, mesh, basis, mirror_state, minus, plus);
  std::vector<Flux> out(minus.size());
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = lax_friedrichs_flux(minus[f], plus[f], lambda_max);
  return out;
}

std::vector<Flux> central_micro_faces(const StateField& W, const Mesh1D& mesh, const NodalBasis& basis,
                                      std::span<const std::uint8_t> face_active) {
  std::vector<Flux> minus, plus;
  face_sides(W, mesh, basis, mirror_micro_flux, minus, plus);
  std::vector<Flux> out(minus.size());
  for (std::size_t f = 0; f < out.size(); ++f) {
    if (!face_active.empty() && !face_active[f]) continue;
    out[f] = (0.5 * mesh.eps_faces[f]) * (minus[f] + plus[f]);
  }
  return out;
}

void micro_moments(const KineticField& g, const VelocityGrid& grid, std::span<const int> cells, StateField& W) {
  const int n_active = static_cast<int>(cells.size());
  const int nq = g.n_nodes();
  const int nv = g.n_velocities();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n_active; ++c) {
    const int i = cells[c];
    for (int k = 0; k < nq; ++k) {
      const auto s = g.slice(i, k);
      double m0 = 0.0, m1 = 0.0, m2 = 0.0;
      for (int j = 0; j < nv; ++j) {
        const double v = grid.points[j];
        const double vg = v * s[j];
        m0 += vg;
        m1 += v * vg;
        m2 += v * v * vg;
      }
      W(i, k) = {grid.dv * m0, grid.dv * m1, 0.5 * grid.dv * m2};
    }
  }
}

StateField euler_weak_rhs(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double lambda_max) {
  const int nq = static_cast<int>(basis.size());
  StateField F(mesh.n_cells, nq);
  for (std::size_t p = 0; p < F.size(); ++p) F.values()[p] = euler_flux(U.values()[p]);
  const auto faces = lax_friedrichs_faces(U, mesh, basis, lambda_max);
  StateField rhs(mesh.n_cells, nq);
  const auto cells = all_cells(mesh.n_cells);
  add_weak_divergence<ConservedState>(F, faces, mesh, basis, cells, rhs);
  return rhs;
}

StateField micro_coupling_rhs(const KineticField& g, const Mesh1D& mesh, const NodalBasis& basis,
                              const VelocityGrid& grid) {
  const int nq = static_cast<int>(basis.size());
  const auto cells = all_cells(mesh.n_cells);
  StateField W(mesh.n_cells, nq);
  micro_moments(g, grid, cells, W);
  const auto faces = central_micro_faces(W, mesh, basis);
  StateField epsW(mesh.n_cells, nq);
  for (int i = 0; i < mesh.n_cells; ++i)
    for (int k = 0; k < nq; ++k) epsW(i, k) = mesh.eps_node(i, k) * W(i, k);
  StateField rhs(mesh.n_cells, nq);
  add_weak_divergence<ConservedState>(epsW, faces, mesh, basis, cells, rhs);
  return rhs;
}

void upwind_faces(const KineticField& g, const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid,
                  std::span<const int> faces, FaceUpwind& out) {
  const int n = mesh.n_cells;
  const int nv = static_cast<int>(grid.size());
  if (out.n_faces != n + 1 || out.n_v != nv) {
    out.n_faces = n + 1;
    out.n_v = nv;
    out.data.assign(static_cast<std::size_t>(n + 1) * nv, 0.0);
  }
  const int n_active = static_cast<int>(faces.size());
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n_active; ++c) {
    const int f = faces[c];
    auto dst = out.face(f);
    for (int j = 0; j < nv; ++j) {
      if (grid.points[j] > 0.0) {
        if (f > 0) {
          dst[j] = slice_trace(g, basis.right_trace, f - 1, j);
        } else if (mesh.boundary == BoundaryKind::periodic) {
          dst[j] = slice_trace(g, basis.right_trace, n - 1, j);
        } else if (mesh.boundary == BoundaryKind::outflow) {
          dst[j] = slice_trace(g, basis.left_trace, 0, j);
        } else {
          dst[j] = slice_trace(g, basis.left_trace, 0, nv - 1 - j);
        }
      } else {
        if (f < n) {
          dst[j] = slice_trace(g, basis.left_trace, f, j);
        } else if (mesh.boundary == BoundaryKind::periodic) {
          dst[j] = slice_trace(g, basis.left_trace, 0, j);
        } else if (mesh.boundary == BoundaryKind::outflow) {
          dst[j] = slice_trace(g, basis.right_trace, n - 1, j);
        } else {
          dst[j] = slice_trace(g, basis.right_trace, n - 1, nv - 1 - j);
        }
      }
    }
  }
}

void transport_cells(const KineticField& g, const FaceUpwind& upwind, std::span<const LocalProjector> projectors,
                     const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid,
                     std::span<const int> cells, KineticField& out) {
  const int nq = static_cast<int>(basis.size());
  const int nv = static_cast<int>(grid.size());
  const int n_active = static_cast<int>(cells.size());
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n_active; ++c) {
    const int i = cells[c];
    const double h = mesh.widths[i];
    const double eps_l = mesh.eps_faces[i];
    const double eps_r = mesh.eps_faces[i + 1];
    const auto up_l = upwind.face(i);
    const auto up_r = upwind.face(i + 1);
    for (int k = 0; k < nq; ++k) {
      auto dst = out.slice(i, k);
      std::fill(dst.begin(), dst.end(), 0.0);
      for (int kp = 0; kp < nq; ++kp) {
        const double a = basis.weight(kp) * mesh.eps_node(i, kp) * basis.diff(kp, k);
        const auto src = g.slice(i, kp);
        for (int j = 0; j < nv; ++j) dst[j] += a * src[j];
      }
      const double br = eps_r * basis.right_trace[k];
      const double bl = eps_l * basis.left_trace[k];
      const double scale = 1.0 / (basis.weight(k) * h);
      for (int j = 0; j < nv; ++j)
        dst[j] = scale * grid.points[j] * (dst[j] - br * up_r[j] + bl * up_l[j]);
      projectors[static_cast<std::size_t>(i) * nq + k].complement(dst, dst);
    }
  }
}

KineticField transport_rhs(const KineticField& g, const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                           const VelocityGrid& grid) {
  const int nq = static_cast<int>(basis.size());
  nodal_primitives(U);  // reports the offending cell before any projector is built
  std::vector<LocalProjector> proj(U.size());
  parallel_for(static_cast<int>(proj.size()), [&](int p) { proj[p].reset(U.values()[p], grid); });
  const auto cells = all_cells(mesh.n_cells);
  const auto faces = all_cells(mesh.n_cells + 1);
  FaceUpwind up;
  upwind_faces(g, mesh, basis, grid, faces, up);
  KineticField out(mesh.n_cells, nq, static_cast<int>(grid.size()));
  transport_cells(g, up, proj, mesh, basis, grid, cells, out);
  return out;
}

ScalarField central_derivative(const ScalarField& f, const Mesh1D& mesh, const NodalBasis& basis, Parity parity) {
  std::vector<double> minus, plus;
  const double sign = parity == Parity::odd ? -1.0 : 1.0;
  face_sides(f, mesh, basis, [sign](double v) { return sign * v; }, minus, plus);
  std::vector<double> fhat(minus.size());
  for (std::size_t p = 0; p < fhat.size(); ++p) fhat[p] = 0.5 * (minus[p] + plus[p]);
  // The weak divergence is the nodal form of -d/dx.
  ScalarField neg(mesh.n_cells, f.n_nodes());
  const auto cells = all_cells(mesh.n_cells);
  add_weak_divergence<double>(f, fhat, mesh, basis, cells, neg);
  for (auto& v : neg.values()) v = -v;
  return neg;
}

ScalarField central_dg_derivative(const ScalarField& f, const Mesh1D& mesh, const NodalBasis& basis, int order,
                                  Parity parity) {
  if (order != 1 && order != 2) throw std::invalid_argument("central_dg_derivative: order must be 1 or 2");
  auto d = central_derivative(f, mesh, basis, parity);
  if (order == 1) return d;
  return central_derivative(d, mesh, basis, parity == Parity::even ? Parity::odd : Parity::even);
}

ScalarField temperature_nodes(const StateField& U) {
  const auto prim = nodal_primitives(U);
  ScalarField T(U.n_cells(), U.n_nodes());
  for (std::size_t p = 0; p < T.size(); ++p) T.values()[p] = prim.values()[p].T;
  return T;
}

ScalarField velocity_nodes(const StateField& U) {
  const auto prim = nodal_primitives(U);
  ScalarField u(U.n_cells(), U.n_nodes());
  for (std::size_t p = 0; p < u.size(); ++p) u.values()[p] = prim.values()[p].u;
  return u;
}

ScalarField temperature_gradient(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis) {
  return central_derivative(temperature_nodes(U), mesh, basis, Parity::even);
}

RelaxationSources relaxation_sources(const KineticField& g, const StateField& U, const ScalarField& r,
                                     const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid) {
  const int nq = static_cast<int>(basis.size());
  const int nv = static_cast<int>(grid.size());
  nodal_primitives(U);
  RelaxationSources s{KineticField(mesh.n_cells, nq, nv), KineticField(mesh.n_cells, nq, nv)};
  for (std::size_t p = 0; p < g.values().size(); ++p) s.s1.values()[p] = -g.values()[p];
  parallel_for(mesh.n_cells, [&](int i) {
    LocalProjector proj;
    for (int k = 0; k < nq; ++k) {
      proj.reset(U(i, k), grid);
      proj.equilibrium_micro(r(i, k), s.s2.slice(i, k));
    }
  });
  return s;
}

double tvb_minmod(double a1, double a2, double a3, double threshold) {
  if (std::abs(a1) <= threshold) return a1;
  if (a1 > 0.0 && a2 > 0.0 && a3 > 0.0) return std::min({a1, a2, a3});
  if (a1 < 0.0 && a2 < 0.0 && a3 < 0.0) return std::max({a1, a2, a3});
  return 0.0;
}

void tvb_limit_inplace(StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double m_tvb) {
  const int n = mesh.n_cells;
  const int nq = static_cast<int>(basis.size());
  std::vector<ConservedState> avg(n + 2);
  for (int i = 0; i < n; ++i) avg[i + 1] = U.cell_average(i, basis);
  switch (mesh.boundary) {
    case BoundaryKind::periodic:
      avg[0] = avg[n];
      avg[n + 1] = avg[1];
      break;
    case BoundaryKind::outflow:
      avg[0] = avg[1];
      avg[n + 1] = avg[n];
      break;
    case BoundaryKind::reflective:
      avg[0] = mirror_state(avg[1]);
      avg[n + 1] = mirror_state(avg[n]);
      break;
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double h = mesh.widths[i];
    const double thr = m_tvb * h * h;
    const ConservedState uR = U.right_trace(i, basis);
    const ConservedState uL = U.left_trace(i, basis);
    const ConservedState& mean = avg[i + 1];
    for (int c = 0; c < 3; ++c) {
      const double dev_r = uR[c] - mean[c];
      const double dev_l = mean[c] - uL[c];
      const double dp = avg[i + 2][c] - mean[c];
      const double dm = mean[c] - avg[i][c];
      const double mr = tvb_minmod(dev_r, dp, dm, thr);
      const double ml = tvb_minmod(dev_l, dp, dm, thr);
      if (mr == dev_r && ml == dev_l) continue;
      const double half_slope = tvb_minmod(0.5 * (dev_r + dev_l), dp, dm, thr);
      for (int k = 0; k < nq; ++k) U(i, k)[c] = mean[c] + 2.0 * half_slope * basis.rule.nodes[k];
    }
  }
}

StateField tvb_limit(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double m_tvb) {
  StateField out = U;
  tvb_limit_inplace(out, mesh, basis, m_tvb);
  return out;
}

}  // namespace hbgk
