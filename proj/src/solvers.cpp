#include "hbgk/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hbgk/parallel.hpp"

namespace hbgk {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() { sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

bool is_fluid(Regime r) { return r != Regime::kinetic; }

}  // namespace

HybridStepper::HybridStepper(const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid,
                             DoubleButcherTableau tableau, StepOptions options)
    : mesh_(mesh), basis_(basis), grid_(grid), tableau_(std::move(tableau)), options_(options) {
  if (auto v = validate(tableau_)) throw std::invalid_argument("HybridStepper: " + v->describe());
  nq_ = static_cast<int>(basis.size());
  nv_ = static_cast<int>(grid.size());
  const int n = mesh.n_cells;
  const int s = tableau_.stages;
  U_.assign(s, StateField(n, nq_));
  RU_.assign(s, StateField(n, nq_));
  g_.assign(s, KineticField(n, nq_, nv_));
  TR_.assign(s, KineticField(n, nq_, nv_));
  S2_.assign(s, KineticField(n, nq_, nv_));
  proj_.resize(static_cast<std::size_t>(n) * nq_);
  W_ = StateField(n, nq_);
  Wrec_ = StateField(n, nq_);
  G_ = StateField(n, nq_);
}

void HybridStepper::macro_rhs(int l, std::span<const Regime> labels, const ScalarField* r, StateField& out) {
  const int n = mesh_.n_cells;
  const StateField& U = U_[l];

  // Nodal micro flux inside each cell.
  {
    Stopwatch sw(timings_.kinetic);
    micro_moments(g_[l], grid_, kinetic_, W_);
  }
  {
    Stopwatch sw(timings_.macro);
    if (r) {
      for (int i = 0; i < n; ++i) {
        if (!is_fluid(labels[i])) continue;
        for (int k = 0; k < nq_; ++k) {
          const double kappa = transport_coefficients(to_primitive(U(i, k))).kappa;
          G_(i, k) = {0.0, 0.0, -kappa * (*r)(i, k)};
          W_(i, k) = labels[i] == Regime::ns ? G_(i, k) : ConservedState{};
        }
      }
    } else {
      for (int i = 0; i < n; ++i)
        if (is_fluid(labels[i]))
          for (int k = 0; k < nq_; ++k) W_(i, k) = {};
    }
  }
  if (!fluid_near_kinetic_.empty()) {
    Stopwatch sw(timings_.coupling);
    micro_moments(g_[l], grid_, fluid_near_kinetic_, Wrec_);
  }
  Stopwatch sw(timings_.macro);

  // Micro-flux trace of cell c on the side facing a cell labelled `other`.
  auto side_trace = [&](int c, Regime other, const std::vector<double>& phi) {
    const StateField* src = &W_;
    if (is_fluid(labels[c])) src = other == Regime::kinetic ? &Wrec_ : &G_;
    ConservedState s{};
    for (int k = 0; k < nq_; ++k) s += phi[k] * (*src)(c, k);
    return s;
  };

  std::vector<Flux> faces = lax_friedrichs_faces(U, mesh_, basis_, lambda_);
  for (int f = 0; f <= n; ++f) {
    int cl = f - 1, cr = f;
    Flux wl{}, wr{};
    if (f == 0 || f == n) {
      const int inner = f == 0 ? 0 : n - 1;
      if (mesh_.boundary == BoundaryKind::periodic) {
        cl = n - 1;
        cr = 0;
      } else {
        if (labels[inner] == Regime::euler) continue;
        const auto& phi = f == 0 ? basis_.left_trace : basis_.right_trace;
        const Flux own = side_trace(inner, labels[inner], phi);
        const Flux ghost = mesh_.boundary == BoundaryKind::reflective ? mirror_micro_flux(own) : own;
        faces[f] += (0.5 * mesh_.eps_faces[f]) * (own + ghost);
        continue;
      }
    }
    if (labels[cl] == Regime::euler && labels[cr] == Regime::euler) continue;
    wl = side_trace(cl, labels[cr], basis_.right_trace);
    wr = side_trace(cr, labels[cl], basis_.left_trace);
    faces[f] += (0.5 * mesh_.eps_faces[f]) * (wl + wr);
  }

  StateField nodal(n, nq_);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < nq_; ++k) nodal(i, k) = euler_flux(U(i, k)) + mesh_.eps_node(i, k) * W_(i, k);
  std::fill(out.values().begin(), out.values().end(), ConservedState{});
  const auto cells = all_cells(n);
  add_weak_divergence<ConservedState>(nodal, faces, mesh_, basis_, cells, out);
}

void HybridStepper::step(StateField& U, KineticField& g, std::span<const Regime> labels, double dt) {
  const int n = mesh_.n_cells;
  const int s = tableau_.stages;
  if (U.n_cells() != n || g.n_cells() != n || static_cast<int>(labels.size()) != n || g.n_velocities() != nv_)
    throw std::invalid_argument("HybridStepper::step: shape mismatch");
  if (!(dt > 0.0)) throw std::invalid_argument("HybridStepper::step: dt must be positive");

  kinetic_.clear();
  fluid_near_kinetic_.clear();
  kinetic_faces_.clear();
  std::vector<std::uint8_t> face_mark(n + 1, 0);
  bool any_non_euler = false;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != Regime::euler) any_non_euler = true;
    if (labels[i] == Regime::kinetic) {
      kinetic_.push_back(i);
      face_mark[i] = face_mark[i + 1] = 1;
      continue;
    }
    bool near = false;
    if (i > 0 && labels[i - 1] == Regime::kinetic) near = true;
    if (i + 1 < n && labels[i + 1] == Regime::kinetic) near = true;
    if (mesh_.boundary == BoundaryKind::periodic &&
        ((i == 0 && labels[n - 1] == Regime::kinetic) || (i == n - 1 && labels[0] == Regime::kinetic)))
      near = true;
    if (near) fluid_near_kinetic_.push_back(i);
  }
  for (int f = 0; f <= n; ++f)
    if (face_mark[f]) kinetic_faces_.push_back(f);
  const bool any_kinetic = !kinetic_.empty();

  {
    Stopwatch sw(timings_.macro);
    lambda_ = max_wave_speed(U.values());
  }

  for (int l = 0; l < s; ++l) {
    StateField& Ul = U_[l];
    KineticField& gl = g_[l];
    {
      Stopwatch sw(timings_.macro);
      if (l == 0) {
        Ul = U;
      } else {
        for (std::size_t p = 0; p < Ul.size(); ++p) {
          ConservedState acc = U.values()[p];
          for (int j = 0; j < l; ++j) {
            const double a = tableau_.at(l, j);
            if (a != 0.0) acc += (dt * a) * RU_[j].values()[p];
          }
          Ul.values()[p] = acc;
        }
        if (options_.limiter == LimiterPolicy::every_stage) tvb_limit_inplace(Ul, mesh_, basis_, options_.m_tvb);
      }
      nodal_primitives(Ul);
    }

    ScalarField r;
    if (any_non_euler) {
      Stopwatch sw(timings_.macro);
      r = temperature_gradient(Ul, mesh_, basis_);
    }

    if (any_kinetic) {
      Stopwatch sw(timings_.kinetic);
      const double all = tableau_.a(l, l);
      const bool need_s2 = tableau_.implicit_column_used(l);
      parallel_for(static_cast<int>(kinetic_.size()), [&](int c) {
        const int i = kinetic_[c];
        std::vector<double> acc(nv_);
        for (int k = 0; k < nq_; ++k) {
          LocalProjector& P = proj_[static_cast<std::size_t>(i) * nq_ + k];
          P.reset(Ul(i, k), grid_);
          if (need_s2) P.equilibrium_micro(r(i, k), S2_[l].slice(i, k));
          auto out = gl.slice(i, k);
          const auto gn = g.slice(i, k);
          if (l == 0) {
            std::copy(gn.begin(), gn.end(), out.begin());
            continue;
          }
          const double eps = mesh_.eps_node(i, k);
          for (int j = 0; j < nv_; ++j) acc[j] = eps * gn[j];
          for (int m = 0; m < l; ++m) {
            const double at = tableau_.at(l, m);
            const double a = tableau_.a(l, m);
            const auto tr = TR_[m].slice(i, k);
            const auto gm = g_[m].slice(i, k);
            const auto s2 = S2_[m].slice(i, k);
            if (at != 0.0)
              for (int j = 0; j < nv_; ++j) acc[j] += dt * at * tr[j];
            if (a != 0.0)
              for (int j = 0; j < nv_; ++j) acc[j] += dt * a * (s2[j] - gm[j]);
          }
          implicit_g_stage_solve(acc, eps, all, dt, S2_[l].slice(i, k), out);
        }
      });
    }

    if (!fluid_near_kinetic_.empty()) {
      Stopwatch sw(timings_.coupling);
      recover_equilibrium_g(Ul, r, grid_, fluid_near_kinetic_, gl);
    }

    if (!tableau_.explicit_column_used(l)) continue;
    macro_rhs(l, labels, any_non_euler ? &r : nullptr, RU_[l]);
    if (any_kinetic) {
      Stopwatch sw(timings_.kinetic);
      upwind_faces(gl, mesh_, basis_, grid_, kinetic_faces_, upwind_);
      transport_cells(gl, upwind_, proj_, mesh_, basis_, grid_, kinetic_, TR_[l]);
    }
  }

  // Globally stiffly accurate: the update is the last stage.
  U = U_[s - 1];
  if (options_.limiter == LimiterPolicy::step_end) {
    Stopwatch sw(timings_.macro);
    tvb_limit_inplace(U, mesh_, basis_, options_.m_tvb);
  }
  for (int i : kinetic_) {
    const auto src = g_[s - 1].cell(i);
    std::copy(src.begin(), src.end(), g.cell(i).begin());
  }
}

StateField euler_rk_step(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                         const DoubleButcherTableau& tableau, double dt, StepOptions options) {
  VelocityGrid grid = VelocityGrid::midpoint(1.0, 1);
  HybridStepper stepper(mesh, basis, grid, tableau, options);
  StateField out = U;
  KineticField g(mesh.n_cells, static_cast<int>(basis.size()), 1);
  const std::vector<Regime> labels(mesh.n_cells, Regime::euler);
  stepper.step(out, g, labels, dt);
  return out;
}

StateField ns_ldg_step(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                       const DoubleButcherTableau& tableau, double dt, StepOptions options) {
  VelocityGrid grid = VelocityGrid::midpoint(1.0, 1);
  HybridStepper stepper(mesh, basis, grid, tableau, options);
  StateField out = U;
  KineticField g(mesh.n_cells, static_cast<int>(basis.size()), 1);
  const std::vector<Regime> labels(mesh.n_cells, Regime::ns);
  stepper.step(out, g, labels, dt);
  return out;
}

std::pair<StateField, KineticField> kinetic_imex_step(const StateField& U, const KineticField& g, const Mesh1D& mesh,
                                                      const NodalBasis& basis, const VelocityGrid& grid,
                                                      const DoubleButcherTableau& tableau, double dt,
                                                      StepOptions options) {
  HybridStepper stepper(mesh, basis, grid, tableau, options);
  std::pair<StateField, KineticField> out{U, g};
  const std::vector<Regime> labels(mesh.n_cells, Regime::kinetic);
  stepper.step(out.first, out.second, labels, dt);
  return out;
}

void implicit_g_stage_solve(std::span<const double> acc, double eps, double a_ll, double dt,
                            std::span<const double> s2, std::span<double> out) {
  const double denom = eps + dt * a_ll;
  if (!(denom > 0.0)) throw std::invalid_argument("implicit_g_stage_solve: eps + dt a_ll must be positive");
  const double inv = 1.0 / denom;
  const double w = dt * a_ll;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (acc[j] + w * s2[j]) * inv;
}

double cfl_dt(const StateField& U, const Mesh1D& mesh, double v_cut, double cfl) {
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl_dt: cfl must be positive");
  const double speed = std::max(max_wave_speed(U.values()), v_cut);
  return cfl * mesh.max_width() / speed;
}

}  // namespace hbgk
