#include "hbgk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hbgk {

namespace {

// Legendre P_n and its derivative at x in [-1, 1].
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre_rule(int n_points) {
  if (n_points < 1) throw std::invalid_argument("gauss_legendre_rule: n_points must be >= 1");

  QuadratureRule rule;
  rule.order = n_points - 1;
  rule.nodes.assign(n_points, 0.0);
  rule.weights.assign(n_points, 0.0);

  const int n = n_points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [-1/2, 1/2]; weights sum to 1.
    rule.nodes[i] = -0.5 * x;
    rule.nodes[n - 1 - i] = 0.5 * x;
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double NodalBasis::eval(std::size_t k, double xi) const {
  const auto& x = rule.nodes;
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != k) v *= (xi - x[j]) / (x[k] - x[j]);
  return v;
}

double NodalBasis::interpolate(std::span<const double> nodal, double xi) const {
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) s += nodal[k] * eval(k, xi);
  return s;
}

NodalBasis build_nodal_basis(const QuadratureRule& rule) {
  const std::size_t n = rule.size();
  if (n == 0 || rule.weights.size() != n) throw std::invalid_argument("build_nodal_basis: invalid rule");

  NodalBasis b;
  b.rule = rule;
  const auto& x = rule.nodes;

  b.barycentric.assign(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      if (m != j) b.barycentric[j] /= (x[j] - x[m]);

  b.diff_matrix.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (b.barycentric[j] / b.barycentric[i]) / (x[i] - x[j]);
      b.diff_matrix[i * n + j] = d;
      diag -= d;
    }
    b.diff_matrix[i * n + i] = diag;
  }

  b.left_trace.resize(n);
  b.right_trace.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    b.left_trace[k] = b.eval(k, -0.5);
    b.right_trace[k] = b.eval(k, 0.5);
  }
  return b;
}

}  // namespace hbgk
