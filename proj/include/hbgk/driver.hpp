#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hbgk/regime.hpp"
#include "hbgk/solvers.hpp"

namespace hbgk {

enum class ProblemId { sod, blast, mixed };

std::string problem_name(ProblemId p);
ProblemId parse_problem(const std::string& s);

struct ProblemConfig {
  ProblemId problem = ProblemId::sod;
  double a = -0.2;
  double b = 1.2;
  int nx = 50;
  int order = 2;  // K
  double v_cut = 4.5;
  int nv = 100;
  EpsilonProfile eps = EpsilonProfile::constant_value(1e-3);
  BoundaryKind boundary = BoundaryKind::outflow;
  double t_final = 0.2;
  double cfl = 0.05;
  double m_tvb = 1.0;
  LimiterPolicy limiter = LimiterPolicy::step_end;
  Mode mode = Mode::euler_ns_kinetic;
  Thresholds thresholds;
  int frames = 0;  // evenly spaced output times (written when out_dir is set)
  std::string out_dir;
  unsigned seed = 0;  // reserved, the solver is deterministic

  /// Benchmark geometry and end time; `eps` is the constant Knudsen number
  /// (sod, blast) or eps0 of the variable profile (mixed).
  static ProblemConfig defaults(ProblemId p, double eps);
  /// Throws std::invalid_argument naming the offending field.
  void check() const;
};

/// Everything a run evolves, with the discretisation it lives on.
struct Simulation {
  ProblemConfig config;
  NodalBasis basis;
  Mesh1D mesh;
  VelocityGrid grid;
  StateField U;
  KineticField g;
  RegimeMap regimes;
  double t = 0.0;
  int step = 0;
};

std::unique_ptr<Simulation> init_problem(const ProblemConfig& cfg);

struct RunTimings {
  double total = 0.0;
  double classify = 0.0;
  StepTimings step;
};

struct RunReport {
  std::string problem;
  std::string mode;
  std::string eps;
  int nx = 0;
  int nv = 0;
  int steps = 0;
  double t_final = 0.0;
  RunTimings timings;
  std::vector<std::array<int, 3>> histogram;  // per step {E, N, K}
  ConservedState initial_totals;
  ConservedState final_totals;
  std::array<double, 3> drift{};  // relative, see conservation_drift
  std::vector<std::string> frame_files;
};

/// sum_i h_i * cell average
ConservedState domain_totals(const Simulation& sim);

/// |Q_end - Q_0| / scale per component, with scale = |Q_0| unless that is
/// below 1e-14 of the total mass, in which case the total mass is used (the
/// momentum of a symmetric problem starts at zero).
std::array<double, 3> conservation_drift(const ConservedState& q0, const ConservedState& q1);

/// Labels for the coming step, with diagnostics refreshed; cells entering the
/// kinetic regime get the recovered equilibrium g.
void update_regimes(Simulation& sim);

/// Refreshes nu_ns, nu_b and the g norms without changing labels.
void refresh_diagnostics(Simulation& sim);

using StepObserver = std::function<void(const Simulation&)>;

/// Runs to t_final. `observer` is called after every step.
RunReport run(Simulation& sim, const StepObserver& observer = {});
RunReport run(const ProblemConfig& cfg, const StepObserver& observer = {});

struct SavingsRow {
  std::string mode;
  double wall = 0.0;
  double savings = 0.0;  // 1 - wall / wall(full-kinetic)
  std::array<int, 3> final_histogram{};
};

/// Full-kinetic and the three hierarchical modes on the same config, run
/// sequentially; the first row is full-kinetic.
std::vector<SavingsRow> timing_compare(const ProblemConfig& base);

/// Heat flux at every node: kinetic cells from g, fluid cells from r_h.
ScalarField heat_flux_nodes(const Simulation& sim);

}  // namespace hbgk
