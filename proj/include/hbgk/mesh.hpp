#pragma once

#include <string>
#include <vector>

#include "hbgk/quadrature.hpp"

namespace hbgk {

enum class BoundaryKind { periodic, outflow, reflective };

/// Knudsen number as a function of x: either a constant or the smooth
/// bump eps0 + (tanh(1 - a0 x) + tanh(1 + a0 x)) / 2.
struct EpsilonProfile {
  enum class Kind { constant, tanh_bump };
  Kind kind = Kind::constant;
  double eps0 = 1e-2;
  double a0 = 40.0;

  static EpsilonProfile constant_value(double eps) { return {Kind::constant, eps, 0.0}; }
  static EpsilonProfile bump(double eps0, double a0) { return {Kind::tanh_bump, eps0, a0}; }

  double operator()(double x) const;
  std::string describe() const;
};

/// Partition a = x_{1/2} < ... < x_{N+1/2} = b with the Knudsen number sampled
/// at every Gauss node and every interface.
struct Mesh1D {
  int n_cells = 0;
  int n_nodes = 0;  // per cell, K + 1
  std::vector<double> faces;   // n_cells + 1
  std::vector<double> widths;  // n_cells
  BoundaryKind boundary = BoundaryKind::periodic;
  std::vector<double> x_nodes;    // n_cells * n_nodes
  std::vector<double> eps_nodes;  // n_cells * n_nodes
  std::vector<double> eps_faces;  // n_cells + 1

  static Mesh1D uniform(double a, double b, int n_cells, BoundaryKind bc, const NodalBasis& basis,
                        const EpsilonProfile& eps);

  double a() const { return faces.front(); }
  double b() const { return faces.back(); }
  double center(int i) const { return 0.5 * (faces[i] + faces[i + 1]); }
  double max_width() const;
  double node_x(int i, int k) const { return x_nodes[i * n_nodes + k]; }
  double eps_node(int i, int k) const { return eps_nodes[i * n_nodes + k]; }
};

}  // namespace hbgk
