#include "hbgk/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "hbgk/frame_io.hpp"
#include "hbgk/parallel.hpp"

namespace hbgk {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double mixed_density(double x) { return 1.0 + 0.875 * std::sin(2.0 * M_PI * x); }
double mixed_temperature(double x) { return 0.5 + 0.4 * std::sin(2.0 * M_PI * x); }
constexpr double kMixedDrift = 0.75;

ConservedState initial_state(ProblemId p, double x) {
  switch (p) {
    case ProblemId::sod:
      return x < 0.5 ? from_primitive(1.0, 0.0, 1.0) : from_primitive(0.125, 0.0, 0.8);
    case ProblemId::blast:
      if (x < 0.2) return from_primitive(1.0, 1.0, 2.0);
      if (x < 0.8) return from_primitive(1.0, 0.0, 0.25);
      return from_primitive(1.0, -1.0, 2.0);
    case ProblemId::mixed:
      return from_primitive(mixed_density(x), 0.0, mixed_temperature(x) + kMixedDrift * kMixedDrift);
  }
  return {};
}

// Per-cell closure distances for the classification; also returns the
// recovered g of every cell.
KineticField compute_diagnostics(Simulation& sim) {
  const auto& mesh = sim.mesh;
  const int n = mesh.n_cells;
  const int nq = mesh.n_nodes;
  const int nv = static_cast<int>(sim.grid.size());
  auto& diag = sim.regimes.diagnostics;

  const auto d = compute_indicator_derivatives(sim.U, mesh, sim.basis);
  fill_indicators(sim.U, d, mesh, sim.basis, sim.config.eps, diag);

  const auto r = temperature_gradient(sim.U, mesh, sim.basis);
  KineticField g_rec = recover_equilibrium_g(sim.U, r, sim.grid);
  parallel_for(n, [&](int i) {
    std::vector<LocalProjector> proj(nq);
    for (int k = 0; k < nq; ++k) proj[k].reset(sim.U(i, k), sim.grid);
    const double eps = sim.config.eps(mesh.center(i));
    if (sim.regimes.labels[i] == Regime::kinetic) {
      const auto g = sim.g.cell(i);
      const auto gr = g_rec.cell(i);
      std::vector<double> diff(g.size());
      for (std::size_t p = 0; p < g.size(); ++p) diff[p] = g[p] - gr[p];
      diag[i].g_norm = eps * cell_weighted_norm(proj, g, sim.basis, nv);
      diag[i].closure_distance = eps * cell_weighted_norm(proj, diff, sim.basis, nv);
    } else {
      diag[i].g_norm = eps * cell_weighted_norm(proj, g_rec.cell(i), sim.basis, nv);
      diag[i].closure_distance = 0.0;
    }
  });
  return g_rec;
}

}  // namespace

std::string problem_name(ProblemId p) {
  switch (p) {
    case ProblemId::sod: return "sod";
    case ProblemId::blast: return "blast";
    case ProblemId::mixed: return "mixed";
  }
  return "?";
}

ProblemId parse_problem(const std::string& s) {
  for (ProblemId p : {ProblemId::sod, ProblemId::blast, ProblemId::mixed})
    if (problem_name(p) == s) return p;
  throw std::invalid_argument("unknown problem '" + s + "'");
}

ProblemConfig ProblemConfig::defaults(ProblemId p, double eps) {
  ProblemConfig c;
  c.problem = p;
  switch (p) {
    case ProblemId::sod:
      c.a = -0.2;
      c.b = 1.2;
      c.v_cut = 4.5;
      c.boundary = BoundaryKind::outflow;
      c.t_final = 0.2;
      c.eps = EpsilonProfile::constant_value(eps);
      break;
    case ProblemId::blast:
      c.a = 0.0;
      c.b = 1.0;
      c.v_cut = 9.0;
      c.boundary = BoundaryKind::reflective;
      c.t_final = 0.25;
      c.eps = EpsilonProfile::constant_value(eps);
      break;
    case ProblemId::mixed:
      c.a = -0.5;
      c.b = 0.5;
      c.v_cut = 10.0;
      c.boundary = BoundaryKind::periodic;
      c.t_final = 0.45;
      c.eps = EpsilonProfile::bump(eps, 40.0);
      break;
  }
  return c;
}

void ProblemConfig::check() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (nx < 1) fail("nx must be >= 1");
  if (nv < 1) fail("nv must be >= 1");
  if (order < 0) fail("order must be >= 0");
  if (!(b > a)) fail("domain must have b > a");
  if (!(v_cut > 0.0)) fail("v_cut must be positive");
  if (!(t_final > 0.0)) fail("t_final must be positive");
  if (!(cfl > 0.0)) fail("cfl must be positive");
  if (!(m_tvb >= 0.0)) fail("mtvb must be non-negative");
  if (!(eps.eps0 >= 0.0)) fail("eps must be non-negative");
  if (!(thresholds.eta0 > 0.0) || !(thresholds.eta1 > 0.0) || !(thresholds.delta0 > 0.0))
    fail("thresholds must be positive");
  if (frames < 0) fail("frames must be >= 0");
}

std::unique_ptr<Simulation> init_problem(const ProblemConfig& cfg) {
  cfg.check();
  auto sim = std::make_unique<Simulation>();
  sim->config = cfg;
  sim->basis = build_nodal_basis(gauss_legendre_rule(cfg.order + 1));
  sim->mesh = Mesh1D::uniform(cfg.a, cfg.b, cfg.nx, cfg.boundary, sim->basis, cfg.eps);
  sim->grid = VelocityGrid::midpoint(cfg.v_cut, cfg.nv);
  const int nq = sim->mesh.n_nodes;
  sim->U = StateField(cfg.nx, nq);
  sim->g = KineticField(cfg.nx, nq, cfg.nv);
  for (int i = 0; i < cfg.nx; ++i)
    for (int k = 0; k < nq; ++k) sim->U(i, k) = initial_state(cfg.problem, sim->mesh.node_x(i, k));

  if (cfg.problem == ProblemId::mixed) {
    // Two drifting Maxwellians with the same moments as U: g = (I - Pi)(f - M) / eps.
    std::vector<double> f(cfg.nv);
    for (int i = 0; i < cfg.nx; ++i)
      for (int k = 0; k < nq; ++k) {
        const double x = sim->mesh.node_x(i, k);
        const double rho = mixed_density(x), T = mixed_temperature(x);
        const auto plus = maxwellian_eval(from_primitive(0.5 * rho, kMixedDrift, T), sim->grid);
        const auto minus = maxwellian_eval(from_primitive(0.5 * rho, -kMixedDrift, T), sim->grid);
        const auto M = maxwellian_eval(sim->U(i, k), sim->grid);
        const double eps = sim->mesh.eps_node(i, k);
        for (int j = 0; j < cfg.nv; ++j) f[j] = (plus[j] + minus[j] - M[j]) / eps;
        const auto g = project_complement(f, sim->U(i, k), sim->grid);
        std::copy(g.begin(), g.end(), sim->g.slice(i, k).begin());
      }
  }
  sim->regimes = RegimeMap(cfg.nx, initial_regime(cfg.mode));
  return sim;
}

ConservedState domain_totals(const Simulation& sim) {
  ConservedState s{};
  for (int i = 0; i < sim.mesh.n_cells; ++i) s += sim.mesh.widths[i] * sim.U.cell_average(i, sim.basis);
  return s;
}

std::array<double, 3> conservation_drift(const ConservedState& q0, const ConservedState& q1) {
  std::array<double, 3> d{};
  for (int c = 0; c < 3; ++c) {
    double scale = std::abs(q0[c]);
    if (scale < 1e-14 * std::abs(q0.rho)) scale = std::abs(q0.rho);
    d[c] = std::abs(q1[c] - q0[c]) / scale;
  }
  return d;
}

void update_regimes(Simulation& sim) {
  if (!is_hierarchical(sim.config.mode)) return;
  const KineticField g_rec = compute_diagnostics(sim);
  const auto next = classify(sim.regimes.labels, sim.regimes.diagnostics, sim.config.mode, sim.config.thresholds,
                             sim.mesh.boundary);
  for (int i = 0; i < sim.mesh.n_cells; ++i) {
    if (next[i] == sim.regimes.labels[i]) continue;
    sim.regimes.last_change[i] = sim.step;
    if (next[i] == Regime::kinetic) {
      const auto src = g_rec.cell(i);
      std::copy(src.begin(), src.end(), sim.g.cell(i).begin());
    }
    sim.regimes.labels[i] = next[i];
  }
}

void refresh_diagnostics(Simulation& sim) { compute_diagnostics(sim); }

ScalarField heat_flux_nodes(const Simulation& sim) {
  const auto& mesh = sim.mesh;
  const int nq = mesh.n_nodes;
  const auto r = temperature_gradient(sim.U, mesh, sim.basis);
  ScalarField q(mesh.n_cells, nq);
  for (int i = 0; i < mesh.n_cells; ++i)
    for (int k = 0; k < nq; ++k) {
      const double eps = mesh.eps_node(i, k);
      if (sim.regimes.labels[i] == Regime::kinetic)
        q(i, k) = heat_flux_kinetic(sim.g.slice(i, k), sim.U(i, k), sim.grid, eps);
      else
        q(i, k) = heat_flux_fluid(to_primitive(sim.U(i, k)), r(i, k), eps);
    }
  return q;
}

RunReport run(Simulation& sim, const StepObserver& observer) {
  const auto& cfg = sim.config;
  RunReport rep;
  rep.problem = problem_name(cfg.problem);
  rep.mode = mode_name(cfg.mode);
  rep.eps = cfg.eps.describe();
  rep.nx = cfg.nx;
  rep.nv = cfg.nv;
  rep.initial_totals = domain_totals(sim);

  StepOptions opt;
  opt.m_tvb = cfg.m_tvb;
  opt.limiter = cfg.limiter;
  HybridStepper stepper(sim.mesh, sim.basis, sim.grid, ars443(), opt);

  // Steps are clipped to land on the frame times even when nothing is
  // written, so an observer sees the same sample times.
  const bool write_frames = cfg.frames > 0 && !cfg.out_dir.empty();
  int next_frame = 1;
  auto emit_frame = [&](int index) {
    refresh_diagnostics(sim);
    char name[64];
    std::snprintf(name, sizeof name, "frame_%04d.txt", index);
    const auto path = (std::filesystem::path(cfg.out_dir) / name).string();
    write_frame(make_frame(sim), path);
    rep.frame_files.push_back(path);
  };
  if (write_frames) {
    std::filesystem::create_directories(cfg.out_dir);
    emit_frame(0);
  }

  double wall = 0.0;
  const double t_end = cfg.t_final;
  while (sim.t < t_end * (1.0 - 1e-14)) {
    const auto t0 = std::chrono::steady_clock::now();
    const double target = cfg.frames > 0 ? std::min(t_end, next_frame * t_end / cfg.frames) : t_end;
    bool lands = false;
    try {
      // The first step keeps the initial labels: a kinetic start with g = 0
      // would otherwise be demoted before the micro part has developed.
      if (sim.step > 0) {
        const auto tc = std::chrono::steady_clock::now();
        update_regimes(sim);
        rep.timings.classify += seconds_since(tc);
      }
      rep.histogram.push_back(sim.regimes.histogram());

      double dt = cfl_dt(sim.U, sim.mesh, cfg.v_cut, cfg.cfl);
      if (sim.t + dt >= target * (1.0 - 1e-12)) {
        dt = target - sim.t;
        lands = true;
      }
      stepper.step(sim.U, sim.g, sim.regimes.labels, dt);
      sim.t = lands ? target : sim.t + dt;
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(std::string(e.what()) + " at step " + std::to_string(sim.step) + ", t = " +
                                 std::to_string(sim.t),
                             e.cell());
    }
    ++sim.step;
    wall += seconds_since(t0);

    if (observer) observer(sim);
    if (cfg.frames > 0 && lands) {
      if (write_frames) emit_frame(next_frame);
      ++next_frame;
    }
  }

  rep.steps = sim.step;
  rep.t_final = sim.t;
  rep.timings.total = wall;
  rep.timings.step = stepper.timings();
  rep.final_totals = domain_totals(sim);
  rep.drift = conservation_drift(rep.initial_totals, rep.final_totals);
  return rep;
}

RunReport run(const ProblemConfig& cfg, const StepObserver& observer) {
  auto sim = init_problem(cfg);
  return run(*sim, observer);
}

std::vector<SavingsRow> timing_compare(const ProblemConfig& base) {
  std::vector<SavingsRow> rows;
  for (Mode m : {Mode::full_kinetic, Mode::euler_ns_kinetic, Mode::ns_kinetic, Mode::euler_kinetic}) {
    ProblemConfig cfg = base;
    cfg.mode = m;
    cfg.frames = 0;
    auto sim = init_problem(cfg);
    const auto rep = run(*sim);
    SavingsRow row;
    row.mode = mode_name(m);
    row.wall = rep.timings.total;
    row.final_histogram = sim->regimes.histogram();
    rows.push_back(row);
  }
  for (auto& r : rows) r.savings = 1.0 - r.wall / rows.front().wall;
  return rows;
}

}  // namespace hbgk
