#include "hbgk/reference_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hbgk::reference {

namespace {

// Nodal values of cell i, or of the ghost cell when i is -1 or n. A ghost is
// the adjacent interior cell seen through the boundary: node order reversed,
// mirrored on reflective walls.
std::vector<ConservedState> cell_states(const StateField& U, const Mesh1D& mesh, int i) {
  const int n = mesh.n_cells;
  const int nq = U.n_nodes();
  std::vector<ConservedState> out(nq);
  if (i >= 0 && i < n) {
    for (int k = 0; k < nq; ++k) out[k] = U(i, k);
    return out;
  }
  if (mesh.boundary == BoundaryKind::periodic) {
    const int w = (i + n) % n;
    for (int k = 0; k < nq; ++k) out[k] = U(w, k);
    return out;
  }
  const int src = i < 0 ? 0 : n - 1;
  for (int k = 0; k < nq; ++k) {
    ConservedState s = U(src, nq - 1 - k);
    if (mesh.boundary == BoundaryKind::reflective) s.mom = -s.mom;
    out[k] = s;
  }
  return out;
}

std::vector<double> cell_scalars(const ScalarField& f, const Mesh1D& mesh, int i, double parity_sign) {
  const int n = mesh.n_cells;
  const int nq = f.n_nodes();
  std::vector<double> out(nq);
  if (i >= 0 && i < n) {
    for (int k = 0; k < nq; ++k) out[k] = f(i, k);
  } else if (mesh.boundary == BoundaryKind::periodic) {
    for (int k = 0; k < nq; ++k) out[k] = f((i + n) % n, k);
  } else {
    const int src = i < 0 ? 0 : n - 1;
    const double s = mesh.boundary == BoundaryKind::reflective ? parity_sign : 1.0;
    for (int k = 0; k < nq; ++k) out[k] = s * f(src, nq - 1 - k);
  }
  return out;
}

// g at (cell i or ghost, node k, velocity j).
double kinetic_value(const KineticField& g, const Mesh1D& mesh, int i, int k, int j) {
  const int n = mesh.n_cells;
  const int nq = g.n_nodes();
  const int nv = g.n_velocities();
  if (i >= 0 && i < n) return g.slice(i, k)[j];
  if (mesh.boundary == BoundaryKind::periodic) return g.slice((i + n) % n, k)[j];
  const int src = i < 0 ? 0 : n - 1;
  const int jj = mesh.boundary == BoundaryKind::reflective ? nv - 1 - j : j;
  return g.slice(src, nq - 1 - k)[jj];
}

template <class T>
T trace(const std::vector<T>& nodal, const std::vector<double>& phi) {
  T s{};
  for (std::size_t k = 0; k < nodal.size(); ++k) s += phi[k] * nodal[k];
  return s;
}

}  // namespace

std::vector<double> project_complement(std::span<const double> f, const ConservedState& U,
                                       const VelocityGrid& grid) {
  const auto prim = to_primitive(U);
  const auto M = maxwellian_eval(U, grid);
  const std::size_t nv = grid.size();
  auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < nv; ++j) s += a[j] * b[j] * M[j];
    return s * grid.dv;
  };
  // Orthonormal polynomials q_0, q_1, q_2 in the M-weighted discrete product.
  std::vector<std::vector<double>> q;
  for (int p = 0; p < 3; ++p) {
    std::vector<double> c(nv);
    for (std::size_t j = 0; j < nv; ++j) c[j] = std::pow(grid.points[j] - prim.u, p);
    for (const auto& e : q) {
      const double a = inner(c, e);
      for (std::size_t j = 0; j < nv; ++j) c[j] -= a * e[j];
    }
    const double norm = std::sqrt(inner(c, c));
    for (auto& v : c) v /= norm;
    q.push_back(std::move(c));
  }
  std::vector<double> out(f.begin(), f.end());
  for (const auto& e : q) {
    double a = 0.0;
    for (std::size_t j = 0; j < nv; ++j) a += f[j] * e[j];
    a *= grid.dv;
    for (std::size_t j = 0; j < nv; ++j) out[j] -= a * e[j] * M[j];
  }
  return out;
}

StateField euler_weak_rhs(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double lambda_max) {
  const int n = mesh.n_cells;
  const int nq = static_cast<int>(basis.size());
  StateField rhs(n, nq);
  for (int i = 0; i < n; ++i) {
    const auto left = cell_states(U, mesh, i - 1);
    const auto self = cell_states(U, mesh, i);
    const auto right = cell_states(U, mesh, i + 1);
    const Flux fl =
        lax_friedrichs_flux(trace(left, basis.right_trace), trace(self, basis.left_trace), lambda_max);
    const Flux fr =
        lax_friedrichs_flux(trace(self, basis.right_trace), trace(right, basis.left_trace), lambda_max);
    for (int k = 0; k < nq; ++k) {
      Flux vol{};
      for (int m = 0; m < nq; ++m) vol += basis.weight(m) * basis.diff(m, k) * euler_flux(self[m]);
      rhs(i, k) = (1.0 / (basis.weight(k) * mesh.widths[i])) *
                  (vol - basis.right_trace[k] * fr + basis.left_trace[k] * fl);
    }
  }
  return rhs;
}

StateField micro_coupling_rhs(const KineticField& g, const Mesh1D& mesh, const NodalBasis& basis,
                              const VelocityGrid& grid) {
  const int n = mesh.n_cells;
  const int nq = static_cast<int>(basis.size());
  const int nv = static_cast<int>(grid.size());
  auto W = [&](int i, int k) {
    Flux w{};
    for (int j = 0; j < nv; ++j) {
      const double v = grid.points[j];
      const double gv = kinetic_value(g, mesh, i, k, j);
      w += grid.dv * gv * Flux{v, v * v, 0.5 * v * v * v};
    }
    return w;
  };
  auto W_trace = [&](int i, const std::vector<double>& phi) {
    Flux s{};
    for (int k = 0; k < nq; ++k) s += phi[k] * W(i, k);
    return s;
  };
  StateField rhs(n, nq);
  for (int i = 0; i < n; ++i) {
    const Flux fl = 0.5 * mesh.eps_faces[i] * (W_trace(i - 1, basis.right_trace) + W_trace(i, basis.left_trace));
    const Flux fr =
        0.5 * mesh.eps_faces[i + 1] * (W_trace(i, basis.right_trace) + W_trace(i + 1, basis.left_trace));
    for (int k = 0; k < nq; ++k) {
      Flux vol{};
      for (int m = 0; m < nq; ++m) vol += basis.weight(m) * basis.diff(m, k) * mesh.eps_node(i, m) * W(i, m);
      rhs(i, k) = (1.0 / (basis.weight(k) * mesh.widths[i])) *
                  (vol - basis.right_trace[k] * fr + basis.left_trace[k] * fl);
    }
  }
  return rhs;
}

KineticField transport_rhs(const KineticField& g, const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                           const VelocityGrid& grid) {
  const int n = mesh.n_cells;
  const int nq = static_cast<int>(basis.size());
  const int nv = static_cast<int>(grid.size());
  KineticField out(n, nq, nv);
  auto g_trace = [&](int i, const std::vector<double>& phi, int j) {
    double s = 0.0;
    for (int k = 0; k < nq; ++k) s += phi[k] * kinetic_value(g, mesh, i, k, j);
    return s;
  };
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < nq; ++k) {
      std::vector<double> t(nv);
      for (int j = 0; j < nv; ++j) {
        const double v = grid.points[j];
        const double gl = v > 0.0 ? g_trace(i - 1, basis.right_trace, j) : g_trace(i, basis.left_trace, j);
        const double gr = v > 0.0 ? g_trace(i, basis.right_trace, j) : g_trace(i + 1, basis.left_trace, j);
        double vol = 0.0;
        for (int m = 0; m < nq; ++m) vol += basis.weight(m) * basis.diff(m, k) * mesh.eps_node(i, m) * g.slice(i, m)[j];
        const double val = vol - mesh.eps_faces[i + 1] * gr * basis.right_trace[k] +
                           mesh.eps_faces[i] * gl * basis.left_trace[k];
        t[j] = v * val / (basis.weight(k) * mesh.widths[i]);
      }
      const auto c = reference::project_complement(t, U(i, k), grid);
      std::copy(c.begin(), c.end(), out.slice(i, k).begin());
    }
  }
  return out;
}

ScalarField central_derivative(const ScalarField& f, const Mesh1D& mesh, const NodalBasis& basis, Parity parity) {
  const int n = mesh.n_cells;
  const int nq = static_cast<int>(basis.size());
  const double sign = parity == Parity::odd ? -1.0 : 1.0;
  ScalarField d(n, nq);
  for (int i = 0; i < n; ++i) {
    const auto left = cell_scalars(f, mesh, i - 1, sign);
    const auto self = cell_scalars(f, mesh, i, sign);
    const auto right = cell_scalars(f, mesh, i + 1, sign);
    const double fl = 0.5 * (trace(left, basis.right_trace) + trace(self, basis.left_trace));
    const double fr = 0.5 * (trace(self, basis.right_trace) + trace(right, basis.left_trace));
    for (int k = 0; k < nq; ++k) {
      double vol = 0.0;
      for (int m = 0; m < nq; ++m) vol += basis.weight(m) * basis.diff(m, k) * self[m];
      d(i, k) = (-vol + basis.right_trace[k] * fr - basis.left_trace[k] * fl) / (basis.weight(k) * mesh.widths[i]);
    }
  }
  return d;
}

KineticField relaxation_source_s2(const StateField& U, const ScalarField& r, const Mesh1D& mesh,
                                  const NodalBasis& basis, const VelocityGrid& grid) {
  const int nq = static_cast<int>(basis.size());
  const int nv = static_cast<int>(grid.size());
  KineticField s2(mesh.n_cells, nq, nv);
  for (int i = 0; i < mesh.n_cells; ++i)
    for (int k = 0; k < nq; ++k) {
      const auto prim = to_primitive(U(i, k));
      const auto M = maxwellian_eval(U(i, k), grid);
      const double sT = std::sqrt(prim.T);
      std::vector<double> b(nv);
      for (int j = 0; j < nv; ++j) b[j] = -b_function((grid.points[j] - prim.u) / sT) * r(i, k) / sT * M[j];
      const auto c = reference::project_complement(b, U(i, k), grid);
      std::copy(c.begin(), c.end(), s2.slice(i, k).begin());
    }
  return s2;
}

StateField tvb_limit(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double m_tvb) {
  const int n = mesh.n_cells;
  const int nq = static_cast<int>(basis.size());
  auto mean = [&](int i) {
    const auto s = cell_states(U, mesh, i);
    ConservedState a{};
    for (int k = 0; k < nq; ++k) a += basis.weight(k) * s[k];
    return a;
  };
  StateField out = U;
  for (int i = 0; i < n; ++i) {
    const ConservedState a = mean(i), al = mean(i - 1), ar = mean(i + 1);
    const double thr = m_tvb * mesh.widths[i] * mesh.widths[i];
    for (int c = 0; c < 3; ++c) {
      double uR = 0.0, uL = 0.0;
      for (int k = 0; k < nq; ++k) {
        uR += basis.right_trace[k] * U(i, k)[c];
        uL += basis.left_trace[k] * U(i, k)[c];
      }
      const double t1 = uR - a[c], t2 = a[c] - uL;
      const double dp = ar[c] - a[c], dm = a[c] - al[c];
      if (tvb_minmod(t1, dp, dm, thr) == t1 && tvb_minmod(t2, dp, dm, thr) == t2) continue;
      const double s = 2.0 * tvb_minmod(0.5 * (t1 + t2), dp, dm, thr);
      for (int k = 0; k < nq; ++k) out(i, k)[c] = a[c] + s * basis.rule.nodes[k];
    }
  }
  return out;
}

}  // namespace hbgk::reference
