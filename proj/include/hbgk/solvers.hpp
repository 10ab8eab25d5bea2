#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hbgk/dg_kernels.hpp"
#include "hbgk/imex.hpp"
#include "hbgk/regime.hpp"

namespace hbgk {

enum class LimiterPolicy { every_stage, step_end, off };

struct StepOptions {
  double m_tvb = 1.0;
  LimiterPolicy limiter = LimiterPolicy::step_end;
};

/// Wall time (seconds) spent in the step, split by what the work serves.
struct StepTimings {
  double macro = 0.0;    // conserved-variable RHS, limiter, r_h
  double kinetic = 0.0;  // projections, transport, relaxation, micro moments
  double coupling = 0.0; // recovered g at fluid/kinetic interfaces
};

/// One IMEX time step of the hierarchical scheme. Every cell advances the
/// conserved variables with the explicit table; the micro flux entering them is
/// <v m g> in kinetic cells and the Navier-Stokes heat flux in NS cells (zero
/// inside Euler cells). Kinetic cells also advance g with the implicit table.
/// A fluid cell next to a kinetic one exposes the recovered equilibrium g as
/// the kinetic neighbour's upwind trace and <v m g_rec> as its micro-flux trace.
class HybridStepper {
 public:
  HybridStepper(const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid,
                DoubleButcherTableau tableau, StepOptions options = {});

  /// Advances U in every cell and g in the kinetic cells by dt. g in fluid
  /// cells is left as given.
  void step(StateField& U, KineticField& g, std::span<const Regime> labels, double dt);

  const StepTimings& timings() const { return timings_; }
  void reset_timings() { timings_ = {}; }
  const DoubleButcherTableau& tableau() const { return tableau_; }

 private:
  void macro_rhs(int l, std::span<const Regime> labels, const ScalarField* r, StateField& out);

  const Mesh1D& mesh_;
  const NodalBasis& basis_;
  const VelocityGrid& grid_;
  DoubleButcherTableau tableau_;
  StepOptions options_;
  StepTimings timings_;
  double lambda_ = 0.0;

  int nq_ = 0;
  int nv_ = 0;
  std::vector<StateField> U_, RU_;
  std::vector<KineticField> g_, TR_, S2_;
  std::vector<LocalProjector> proj_;
  FaceUpwind upwind_;
  StateField W_, Wrec_, G_;
  std::vector<int> kinetic_, fluid_near_kinetic_, kinetic_faces_;
};

/// Explicit RK-DG step for the Euler equations.
StateField euler_rk_step(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                         const DoubleButcherTableau& tableau, double dt, StepOptions options = {});

/// Explicit RK-LDG step for the Navier-Stokes limit with eps(x) taken from the mesh.
StateField ns_ldg_step(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                       const DoubleButcherTableau& tableau, double dt, StepOptions options = {});

/// Micro-macro NDG-IMEX step with every cell kinetic.
std::pair<StateField, KineticField> kinetic_imex_step(const StateField& U, const KineticField& g, const Mesh1D& mesh,
                                                      const NodalBasis& basis, const VelocityGrid& grid,
                                                      const DoubleButcherTableau& tableau, double dt,
                                                      StepOptions options = {});

/// g = (acc + dt a_ll s2) / (eps + dt a_ll), pointwise. `acc` already
/// carries eps g^n and the earlier stages.
void implicit_g_stage_solve(std::span<const double> acc, double eps, double a_ll, double dt,
                            std::span<const double> s2, std::span<double> out);

/// cfl * h_max / max(Lambda, v_cut)
double cfl_dt(const StateField& U, const Mesh1D& mesh, double v_cut, double cfl);

}  // namespace hbgk
