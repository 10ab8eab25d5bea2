#pragma once

// Serial, unoptimised versions of the spatial kernels. They rebuild every
// projection from scratch (Gram-Schmidt instead of the cached Gram inverse) and
// loop cell by cell with explicit neighbour lookup. Kept for testing only.

#include <span>
#include <vector>

#include "hbgk/dg_kernels.hpp"

namespace hbgk::reference {

/// (I - Pi_M) f by Gram-Schmidt on {M, (v-u) M, (v-u)^2 M} in the discrete
/// 1/M-weighted inner product.
std::vector<double> project_complement(std::span<const double> f, const ConservedState& U,
                                       const VelocityGrid& grid);

StateField euler_weak_rhs(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double lambda_max);
StateField micro_coupling_rhs(const KineticField& g, const Mesh1D& mesh, const NodalBasis& basis,
                              const VelocityGrid& grid);
KineticField transport_rhs(const KineticField& g, const StateField& U, const Mesh1D& mesh, const NodalBasis& basis,
                           const VelocityGrid& grid);
ScalarField central_derivative(const ScalarField& f, const Mesh1D& mesh, const NodalBasis& basis,
                               Parity parity = Parity::even);
KineticField relaxation_source_s2(const StateField& U, const ScalarField& r, const Mesh1D& mesh,
                                  const NodalBasis& basis, const VelocityGrid& grid);
StateField tvb_limit(const StateField& U, const Mesh1D& mesh, const NodalBasis& basis, double m_tvb);

}  // namespace hbgk::reference
