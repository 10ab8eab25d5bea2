#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hbgk/dg_kernels.hpp"

namespace hbgk {

enum class Regime : std::uint8_t { euler, ns, kinetic };

char regime_label(Regime r);
Regime regime_from_label(char c);

/// Which regimes a run may use. The first four are hierarchical (classified
/// every step); the last three keep fixed labels.
enum class Mode { euler_ns_kinetic, euler_kinetic, ns_kinetic, full_kinetic, euler, ns };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);
bool is_hierarchical(Mode m);
/// Label every cell carries in a non-hierarchical mode, and the initial label otherwise.
Regime initial_regime(Mode m);

struct Thresholds {
  double eta0 = 1e-2;
  double eta1 = 1e-1;
  double delta0 = 1e-3;
};

/// Per-cell inputs of the classification, all evaluated on the state at the
/// start of the step.
struct CellDiagnostics {
  double nu_ns = 1.0;
  double nu_b = 1.0;
  double g_norm = 0.0;            // eps ||g||, recovered g for fluid cells
  double closure_distance = 0.0;  // eps ||g - g_rec||, kinetic cells only
};

struct RegimeMap {
  std::vector<Regime> labels;
  std::vector<CellDiagnostics> diagnostics;
  std::vector<int> last_change;  // step index of the last label change

  RegimeMap() = default;
  RegimeMap(int n_cells, Regime fill);

  int size() const { return static_cast<int>(labels.size()); }
  /// {#Euler, #NS, #Kinetic}
  std::array<int, 3> histogram() const;
};

/// Representative T_x, u_x, u_xx per cell: the nodal value of largest magnitude.
struct IndicatorDerivatives {
  std::vector<double> Tx, ux, uxx;
};

double nu_ns(const PrimitiveState& prim, double Tx, double eps);
double burnett_b(const PrimitiveState& prim, double Tx, double ux, double uxx, double eps);
double nu_burnett(const PrimitiveState& prim, double Tx, double ux, double uxx, double eps);

IndicatorDerivatives compute_indicator_derivatives(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis);

/// Fills nu_ns / nu_b of every cell from cell-average primitives and the
/// representative derivatives, with eps taken at the cell centre.
void fill_indicators(const StateField& U, const IndicatorDerivatives& d, const Mesh1D& mesh, const NodalBasis& basis,
                     const EpsilonProfile& eps, std::span<CellDiagnostics> out);

/// Cell norm sqrt(sum_k w_k ||f_k||^2) of the nodal weighted L2 norms.
double cell_weighted_norm(std::span<const LocalProjector> node_projectors, std::span<const double> cell_values,
                          const NodalBasis& basis, int n_v);

/// New labels from the snapshot (labels, diagnostics). Every predicate reads
/// the snapshot only; `visit_order` (a permutation of the cells, empty for the
/// natural order) exists to check that the result does not depend on it.
std::vector<Regime> classify(std::span<const Regime> labels, std::span<const CellDiagnostics> diag, Mode mode,
                             const Thresholds& th, BoundaryKind boundary, std::span<const int> visit_order = {});

/// g = -(I - Pi)(B(V) T_x / sqrt(T) M) at every node of the listed cells.
void recover_equilibrium_g(const StateField& U, const ScalarField& Tx, const VelocityGrid& grid,
                           std::span<const int> cells, KineticField& out);
KineticField recover_equilibrium_g(const StateField& U, const ScalarField& Tx, const VelocityGrid& grid);

}  // namespace hbgk
