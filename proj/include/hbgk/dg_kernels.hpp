#pragma once

// Spatial operators of the nodal DG scheme. Every kernel works on a list of
// active cells, reads neighbour traces that were snapshotted into face arrays
// beforehand, and writes only the active cells' outputs, so the per-cell loops
// run under `omp parallel for` without synchronisation.

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "hbgk/fields.hpp"
#include "hbgk/mesh.hpp"
#include "hbgk/velocity.hpp"

namespace hbgk {

/// Symmetry of a scalar under a reflective wall: T is even, u is odd.
enum class Parity { even, odd };

std::vector<int> all_cells(int n_cells);

/// Primitive state at every node; throws NonPhysicalState carrying the cell.
NodalField<PrimitiveState> nodal_primitives(const StateField& U);

/// Adds, for every cell in `cells`,
///   (sum_k' w_k' f_k' phi_k'(x_k') - fhat_{i+1/2} phi_k(R) + fhat_{i-1/2} phi_k(L)) / (w_k h_i)
/// to rhs. `face_flux` holds n_cells + 1 interface values. This is the nodal
/// weak form of -d/dx f with the mass matrix inverted.
template <class T>
void add_weak_divergence(const NodalField<T>& nodal_flux, std::span<const T> face_flux, const Mesh1D& mesh,
                         const NodalBasis& basis, std::span<const int> cells, NodalField<T>& rhs) {
  const int nq = static_cast<int>(basis.size());
  const int n_active = static_cast<int>(cells.size());
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n_active; ++c) {
    const int i = cells[c];
    const double h = mesh.widths[i];
    for (int k = 0; k < nq; ++k) {
      T acc{};
      for (int kp = 0; kp < nq; ++kp) acc += (basis.weight(kp) * basis.diff(kp, k)) * nodal_flux(i, kp);
      acc -= basis.right_trace[k] * face_flux[i + 1];
      acc += basis.left_trace[k] * face_flux[i];
      rhs(i, k) += (1.0 / (basis.weight(k) * h)) * acc;
    }
  }
}

/// Reflective-wall mirror image of a conserved state: (rho, -rho u, E).
inline ConservedState mirror_state(const ConservedState& U) { return {U.rho, -U.mom, U.energy}; }
/// Mirror image of the micro flux <v m g>: g(v) -> g(-v) flips the odd moments.
inline Flux mirror_micro_flux(const Flux& W) { return {-W.rho, W.mom, -W.energy}; }

/// Global Lax-Friedrichs flux at every face, with ghost traces from the boundary kind.
std::vector<Flux> lax_friedrichs_faces(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                                       double lambda_max);

/// Central micro flux eps(x_f) (W^- + W^+) / 2 at every face where
/// `face_active` is non-zero (all faces when it is empty); zero elsewhere.
std::vector<Flux> central_micro_faces(const StateField& W, const Mesh1D& mesh, const NodalBasis& basis,
                                      std::span<const std::uint8_t> face_active = {});

/// Nodal <v m g> for the listed cells.
void micro_moments(const KineticField& g, const VelocityGrid& grid, std::span<const int> cells, StateField& W);

/// Nodal contribution of the Euler flux, F(U) with global Lax-Friedrichs faces.
StateField euler_weak_rhs(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double lambda_max);

/// Nodal contribution of the micro coupling term eps <v m g>, central faces.
StateField micro_coupling_rhs(const KineticField& g, const Mesh1D& mesh, const NodalBasis& basis,
                              const VelocityGrid& grid);

/// Upwind traces of g at every face: for v_j > 0 the value from the left cell,
/// for v_j < 0 from the right cell. Layout (n_cells + 1) x n_v.
struct FaceUpwind {
  int n_faces = 0;
  int n_v = 0;
  std::vector<double> data;

  std::span<double> face(int f) { return {data.data() + static_cast<std::size_t>(f) * n_v, static_cast<std::size_t>(n_v)}; }
  std::span<const double> face(int f) const {
    return {data.data() + static_cast<std::size_t>(f) * n_v, static_cast<std::size_t>(n_v)};
  }
};

/// Fills the upwind trace at the listed faces, taking each side's trace from
/// `g` (boundary ghosts follow mesh.boundary: outflow copies, reflective mirrors v).
void upwind_faces(const KineticField& g, const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid,
                  std::span<const int> faces, FaceUpwind& out);

/// Per node, (I - Pi_M)(eps-weighted upwind DG derivative of v g) / (w_k h_i)
/// for the listed cells. `projectors` is indexed by i * n_nodes + k.
void transport_cells(const KineticField& g, const FaceUpwind& upwind, std::span<const LocalProjector> projectors,
                     const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid,
                     std::span<const int> cells, KineticField& out);

KineticField transport_rhs(const KineticField& g, const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                           const VelocityGrid& grid);

/// Nodal central-flux DG derivative of a scalar. Boundary ghosts: periodic
/// wraps, outflow copies, reflective applies `parity`.
ScalarField central_derivative(const ScalarField& f, const Mesh1D& mesh, const NodalBasis& basis,
                               Parity parity = Parity::even);

/// order 1: central_derivative; order 2: central_derivative applied twice
/// (the second pass with the flipped parity).
ScalarField central_dg_derivative(const ScalarField& f, const Mesh1D& mesh, const NodalBasis& basis, int order,
                                  Parity parity = Parity::even);

ScalarField temperature_nodes(const StateField& U);
ScalarField velocity_nodes(const StateField& U);

/// Auxiliary r_h ~ T_x with central temperature traces.
ScalarField temperature_gradient(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis);

struct RelaxationSources {
  KineticField s1;  // -g
  KineticField s2;  // -(I - Pi)(B(V) r / sqrt(T) M)
};

RelaxationSources relaxation_sources(const KineticField& g, const StateField& U, const ScalarField& r,
                                     const Mesh1D& mesh, const NodalBasis& basis, const VelocityGrid& grid);

/// Component-wise TVB minmod limiter on conserved variables. A cell whose end
/// deviations are modified is replaced by its average plus a limited slope.
StateField tvb_limit(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double m_tvb);
void tvb_limit_inplace(StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double m_tvb);

/// minmod(a1, a2, a3) with the TVB bypass |a1| <= threshold.
double tvb_minmod(double a1, double a2, double a3, double threshold);

}  // namespace hbgk
