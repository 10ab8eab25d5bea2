#include "hbgk/regime.hpp"

#include <cmath>
#include <stdexcept>

#include "hbgk/parallel.hpp"

namespace hbgk {

char regime_label(Regime r) {
  switch (r) {
    case Regime::euler: return 'E';
    case Regime::ns: return 'N';
    case Regime::kinetic: return 'K';
  }
  return '?';
}

Regime regime_from_label(char c) {
  switch (c) {
    case 'E': return Regime::euler;
    case 'N': return Regime::ns;
    case 'K': return Regime::kinetic;
  }
  throw std::invalid_argument(std::string("unknown regime label '") + c + "'");
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::euler_ns_kinetic: return "euler-ns-kinetic";
    case Mode::euler_kinetic: return "euler-kinetic";
    case Mode::ns_kinetic: return "ns-kinetic";
    case Mode::full_kinetic: return "full-kinetic";
    case Mode::euler: return "euler";
    case Mode::ns: return "ns";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::euler_ns_kinetic, Mode::euler_kinetic, Mode::ns_kinetic, Mode::full_kinetic, Mode::euler,
                 Mode::ns})
    if (mode_name(m) == s) return m;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

bool is_hierarchical(Mode m) {
  return m == Mode::euler_ns_kinetic || m == Mode::euler_kinetic || m == Mode::ns_kinetic;
}

Regime initial_regime(Mode m) {
  if (m == Mode::euler) return Regime::euler;
  if (m == Mode::ns) return Regime::ns;
  return Regime::kinetic;
}

RegimeMap::RegimeMap(int n_cells, Regime fill)
    : labels(n_cells, fill), diagnostics(n_cells), last_change(n_cells, 0) {}

std::array<int, 3> RegimeMap::histogram() const {
  std::array<int, 3> h{0, 0, 0};
  for (Regime r : labels) ++h[static_cast<int>(r)];
  return h;
}

double nu_ns(const PrimitiveState& prim, double Tx, double eps) {
  const double kappa = transport_coefficients(prim).kappa;
  return 1.0 + eps * kappa / (prim.rho * std::pow(prim.T, 1.5)) * std::abs(Tx);
}

double burnett_b(const PrimitiveState& prim, double Tx, double ux, double uxx, double eps) {
  const auto tc = transport_coefficients(prim);
  const double T = prim.T;
  return -eps * tc.kappa / (prim.rho * std::pow(T, 1.5)) * Tx -
         eps * eps * tc.mu * tc.mu / std::sqrt(T) *
             (25.0 / 6.0 * ux * T - 5.0 / 3.0 * (T * uxx + 7.0 * ux * Tx));
}

double nu_burnett(const PrimitiveState& prim, double Tx, double ux, double uxx, double eps) {
  return 1.0 + std::abs(burnett_b(prim, Tx, ux, uxx, eps));
}

namespace {

std::vector<double> representative(const ScalarField& f) {
  std::vector<double> out(f.n_cells(), 0.0);
  for (int i = 0; i < f.n_cells(); ++i) {
    double best = 0.0;
    for (double v : f.cell(i))
      if (std::abs(v) > std::abs(best)) best = v;
    out[i] = best;
  }
  return out;
}

}  // namespace

IndicatorDerivatives compute_indicator_derivatives(const StateField& U, const Mesh1D& mesh,
                                                   const NodalBasis& basis) {
  const auto T = temperature_nodes(U);
  const auto u = velocity_nodes(U);
  IndicatorDerivatives d;
  d.Tx = representative(central_dg_derivative(T, mesh, basis, 1, Parity::even));
  d.ux = representative(central_dg_derivative(u, mesh, basis, 1, Parity::odd));
  d.uxx = representative(central_dg_derivative(u, mesh, basis, 2, Parity::odd));
  return d;
}

void fill_indicators(const StateField& U, const IndicatorDerivatives& d, const Mesh1D& mesh, const NodalBasis& basis,
                     const EpsilonProfile& eps, std::span<CellDiagnostics> out) {
  for (int i = 0; i < mesh.n_cells; ++i) {
    PrimitiveState prim;
    try {
      prim = to_primitive(U.cell_average(i, basis));
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(std::string(e.what()) + " in cell " + std::to_string(i), i);
    }
    const double e_c = eps(mesh.center(i));
    out[i].nu_ns = nu_ns(prim, d.Tx[i], e_c);
    out[i].nu_b = nu_burnett(prim, d.Tx[i], d.ux[i], d.uxx[i], e_c);
  }
}

double cell_weighted_norm(std::span<const LocalProjector> node_projectors, std::span<const double> cell_values,
                          const NodalBasis& basis, int n_v) {
  double s = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double nk = node_projectors[k].weighted_norm(cell_values.subspan(k * n_v, n_v));
    s += basis.weight(k) * nk * nk;
  }
  return std::sqrt(s);
}

std::vector<Regime> classify(std::span<const Regime> labels, std::span<const CellDiagnostics> diag, Mode mode,
                             const Thresholds& th, BoundaryKind boundary, std::span<const int> visit_order) {
  const int n = static_cast<int>(labels.size());
  std::vector<Regime> next(labels.begin(), labels.end());
  if (!is_hierarchical(mode)) {
    std::fill(next.begin(), next.end(), initial_regime(mode));
    return next;
  }
  auto rule = [&](int i) {
    const Regime cur = labels[i];
    const CellDiagnostics& d = diag[i];
    const bool burnett_dev = std::abs(d.nu_b - 1.0) > th.eta0;
    const bool ns_dev = std::abs(d.nu_b - d.nu_ns) > th.eta1;
    const bool near_equilibrium = d.g_norm < th.delta0;
    const bool near_ns = d.closure_distance < th.delta0;
    switch (mode) {
      case Mode::euler_ns_kinetic:
        if (cur == Regime::euler) {
          if (burnett_dev) return ns_dev ? Regime::kinetic : Regime::ns;
          return Regime::euler;
        }
        if (cur == Regime::ns) {
          if (ns_dev) return Regime::kinetic;
          return near_equilibrium ? Regime::euler : Regime::ns;
        }
        if (near_equilibrium) return Regime::euler;
        return near_ns ? Regime::ns : Regime::kinetic;
      case Mode::euler_kinetic:
        if (cur == Regime::kinetic) return near_equilibrium ? Regime::euler : Regime::kinetic;
        return burnett_dev ? Regime::kinetic : Regime::euler;
      case Mode::ns_kinetic:
        if (cur == Regime::kinetic) return near_ns ? Regime::ns : Regime::kinetic;
        return ns_dev ? Regime::kinetic : Regime::ns;
      default:
        return cur;
    }
  };
  if (visit_order.empty()) {
    for (int i = 0; i < n; ++i) next[i] = rule(i);
  } else {
    for (int i : visit_order) next[i] = rule(i);
  }

  if (mode == Mode::euler_ns_kinetic && n >= 3) {
    // A smooth extremum has T_x = 0 and looks like equilibrium to the
    // indicators; an Euler cell squeezed between NS cells follows them.
    std::vector<Regime> fixed = next;
    for (int i = 0; i < n; ++i) {
      if (next[i] != Regime::euler) continue;
      int l = i - 1, r = i + 1;
      if (boundary == BoundaryKind::periodic) {
        l = (l + n) % n;
        r %= n;
      } else if (l < 0 || r >= n) {
        continue;
      }
      if (next[l] == Regime::ns && next[r] == Regime::ns) fixed[i] = Regime::ns;
    }
    next = std::move(fixed);
  }
  return next;
}

void recover_equilibrium_g(const StateField& U, const ScalarField& Tx, const VelocityGrid& grid,
                           std::span<const int> cells, KineticField& out) {
  const int nq = U.n_nodes();
  parallel_for(static_cast<int>(cells.size()), [&](int c) {
    const int i = cells[c];
    LocalProjector proj;
    for (int k = 0; k < nq; ++k) {
      proj.reset(U(i, k), grid);
      proj.equilibrium_micro(Tx(i, k), out.slice(i, k));
    }
  });
}

KineticField recover_equilibrium_g(const StateField& U, const ScalarField& Tx, const VelocityGrid& grid) {
  KineticField out(U.n_cells(), U.n_nodes(), static_cast<int>(grid.size()));
  const auto cells = all_cells(U.n_cells());
  recover_equilibrium_g(U, Tx, grid, cells, out);
  return out;
}

}  // namespace hbgk
