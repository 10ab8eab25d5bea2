#include "hbgk/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hbgk {

double EpsilonProfile::operator()(double x) const {
  if (kind == Kind::constant) return eps0;
  return eps0 + 0.5 * (std::tanh(1.0 - a0 * x) + std::tanh(1.0 + a0 * x));
}

std::string EpsilonProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind == Kind::constant)
    os << "const:" << eps0;
  else
    os << "tanh:" << eps0 << ":" << a0;
  return os.str();
}

Mesh1D Mesh1D::uniform(double a, double b, int n_cells, BoundaryKind bc, const NodalBasis& basis,
                       const EpsilonProfile& eps) {
  if (n_cells < 1 || !(b > a)) throw std::invalid_argument("Mesh1D::uniform: need n_cells >= 1 and b > a");
  Mesh1D m;
  m.n_cells = n_cells;
  m.n_nodes = static_cast<int>(basis.size());
  m.boundary = bc;
  m.faces.resize(n_cells + 1);
  const double h = (b - a) / n_cells;
  for (int i = 0; i <= n_cells; ++i) m.faces[i] = a + i * h;
  m.faces.back() = b;
  m.widths.resize(n_cells);
  for (int i = 0; i < n_cells; ++i) m.widths[i] = m.faces[i + 1] - m.faces[i];

  m.x_nodes.resize(static_cast<std::size_t>(n_cells) * m.n_nodes);
  m.eps_nodes.resize(m.x_nodes.size());
  for (int i = 0; i < n_cells; ++i)
    for (int k = 0; k < m.n_nodes; ++k) {
      const double x = m.center(i) + m.widths[i] * basis.rule.nodes[k];
      m.x_nodes[i * m.n_nodes + k] = x;
      m.eps_nodes[i * m.n_nodes + k] = eps(x);
    }
  m.eps_faces.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) m.eps_faces[i] = eps(m.faces[i]);
  return m;
}

double Mesh1D::max_width() const { return *std::max_element(widths.begin(), widths.end()); }

}  // namespace hbgk
