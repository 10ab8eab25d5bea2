#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hbgk {

/// Gauss-Legendre rule on the reference element (-1/2, 1/2).
struct QuadratureRule {
  int order = 0;  // K: the rule has K + 1 points and is exact to degree 2K + 1
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

QuadratureRule gauss_legendre_rule(int n_points);

/// Lagrange basis through the quadrature nodes, with its derivative matrix and
/// end-point traces, all in reference coordinates.
struct NodalBasis {
  QuadratureRule rule;
  std::vector<double> diff_matrix;  // (K+1)^2, row-major: entry (kp, k) = phi_k'(xi_kp)
  std::vector<double> left_trace;   // phi_k(-1/2)
  std::vector<double> right_trace;  // phi_k(+1/2)
  std::vector<double> barycentric;  // barycentric weights of the nodes

  std::size_t size() const { return rule.size(); }
  double diff(std::size_t at_node, std::size_t k) const { return diff_matrix[at_node * size() + k]; }
  double weight(std::size_t k) const { return rule.weights[k]; }

  /// phi_k(xi) for xi in reference coordinates.
  double eval(std::size_t k, double xi) const;
  /// Value at xi of the interpolant through `nodal`.
  double interpolate(std::span<const double> nodal, double xi) const;
};

NodalBasis build_nodal_basis(const QuadratureRule& rule);

}  // namespace hbgk
