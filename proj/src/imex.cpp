#include "hbgk/imex.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hbgk {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

Rational operator+(const Rational& a, const Rational& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }

bool DoubleButcherTableau::explicit_column_used(int j) const {
  if (eb[j] != 0.0) return true;
  for (int l = j + 1; l < stages; ++l)
    if (at(l, j) != 0.0) return true;
  return false;
}

bool DoubleButcherTableau::implicit_column_used(int j) const {
  if (ib[j] != 0.0) return true;
  for (int l = j; l < stages; ++l)
    if (a(l, j) != 0.0) return true;
  return false;
}

void DoubleButcherTableau::finalize() {
  ea.assign(static_cast<std::size_t>(stages) * stages, 0.0);
  ia.assign(ea.size(), 0.0);
  eb.assign(stages, 0.0);
  ib.assign(stages, 0.0);
  for (int l = 0; l < stages && l < static_cast<int>(explicit_a.size()); ++l)
    for (int j = 0; j < stages && j < static_cast<int>(explicit_a[l].size()); ++j)
      ea[l * stages + j] = explicit_a[l][j].value();
  for (int l = 0; l < stages && l < static_cast<int>(implicit_a.size()); ++l)
    for (int j = 0; j < stages && j < static_cast<int>(implicit_a[l].size()); ++j)
      ia[l * stages + j] = implicit_a[l][j].value();
  for (int j = 0; j < stages && j < static_cast<int>(explicit_b.size()); ++j) eb[j] = explicit_b[j].value();
  for (int j = 0; j < stages && j < static_cast<int>(implicit_b.size()); ++j) ib[j] = implicit_b[j].value();
}

DoubleButcherTableau ars443() {
  using R = Rational;
  DoubleButcherTableau t;
  t.stages = 5;
  t.explicit_a = {
      {R(0), R(0), R(0), R(0), R(0)},
      {R(1, 2), R(0), R(0), R(0), R(0)},
      {R(11, 18), R(1, 18), R(0), R(0), R(0)},
      {R(5, 6), R(-5, 6), R(1, 2), R(0), R(0)},
      {R(1, 4), R(7, 4), R(3, 4), R(-7, 4), R(0)},
  };
  t.explicit_b = {R(1, 4), R(7, 4), R(3, 4), R(-7, 4), R(0)};
  t.explicit_c = {R(0), R(1, 2), R(2, 3), R(1, 2), R(1)};
  t.implicit_a = {
      {R(0), R(0), R(0), R(0), R(0)},
      {R(0), R(1, 2), R(0), R(0), R(0)},
      {R(0), R(1, 6), R(1, 2), R(0), R(0)},
      {R(0), R(-1, 2), R(1, 2), R(1, 2), R(0)},
      {R(0), R(3, 2), R(-3, 2), R(1, 2), R(1, 2)},
  };
  t.implicit_b = {R(0), R(3, 2), R(-3, 2), R(1, 2), R(1, 2)};
  t.implicit_c = {R(0), R(1, 2), R(2, 3), R(1, 2), R(1)};
  t.finalize();
  return t;
}

std::string TableauViolation::describe() const {
  std::ostringstream os;
  os << predicate;
  if (row >= 0) os << " (row " << row + 1;
  if (col >= 0) os << ", col " << col + 1;
  if (row >= 0) os << ")";
  return os.str();
}

std::optional<TableauViolation> validate(const DoubleButcherTableau& t) {
  const int s = t.stages;
  auto square = [s](const std::vector<std::vector<Rational>>& m) {
    if (static_cast<int>(m.size()) != s) return false;
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != s) return false;
    return true;
  };
  if (s < 1 || !square(t.explicit_a) || !square(t.implicit_a) || static_cast<int>(t.explicit_b.size()) != s ||
      static_cast<int>(t.implicit_b.size()) != s || static_cast<int>(t.explicit_c.size()) != s ||
      static_cast<int>(t.implicit_c.size()) != s)
    return TableauViolation{"shape mismatch"};

  for (int l = 0; l < s; ++l)
    for (int j = l; j < s; ++j)
      if (!t.explicit_a[l][j].is_zero()) return TableauViolation{"explicit table not strictly lower triangular", l, j};
  for (int l = 0; l < s; ++l)
    for (int j = l + 1; j < s; ++j)
      if (!t.implicit_a[l][j].is_zero()) return TableauViolation{"implicit table not lower triangular", l, j};

  // Stiff accuracy first: a wrong c_s is reported as such, not as a row sum.
  const Rational one(1);
  if (!(t.explicit_c[s - 1] == one) || !(t.implicit_c[s - 1] == one))
    return TableauViolation{"not globally stiffly accurate", s - 1};
  for (int j = 0; j < s; ++j)
    if (!(t.explicit_a[s - 1][j] == t.explicit_b[j]) || !(t.implicit_a[s - 1][j] == t.implicit_b[j]))
      return TableauViolation{"not globally stiffly accurate", s - 1, j};

  for (int l = 0; l < s; ++l) {
    Rational ec, ic;
    for (int j = 0; j < l; ++j) ec = ec + t.explicit_a[l][j];
    for (int j = 0; j <= l; ++j) ic = ic + t.implicit_a[l][j];
    if (!(ec == t.explicit_c[l])) return TableauViolation{"explicit c is not the row sum", l};
    if (!(ic == t.implicit_c[l])) return TableauViolation{"implicit c is not the row sum", l};
  }
  return std::nullopt;
}

StageWeights stage_weights(const DoubleButcherTableau& t, int l) {
  if (l < 1 || l > t.stages) throw std::out_of_range("stage_weights: stage " + std::to_string(l) + " out of range");
  StageWeights w;
  for (int j = 0; j < l - 1; ++j) w.explicit_row.push_back(t.at(l - 1, j));
  for (int j = 0; j < l; ++j) w.implicit_row.push_back(t.a(l - 1, j));
  return w;
}

std::vector<double> scalar_relaxation_step(const DoubleButcherTableau& t, double y, double lambda, double m,
                                           double eps, double dt) {
  const int s = t.stages;
  std::vector<double> stage(s);
  for (int l = 0; l < s; ++l) {
    double acc = y;
    for (int j = 0; j < l; ++j) acc += dt * (t.at(l, j) * lambda * stage[j] + t.a(l, j) * (m - stage[j]) / eps);
    const double all = t.a(l, l);
    stage[l] = (eps * acc + dt * all * m) / (eps + dt * all);
  }
  double update = y;
  for (int j = 0; j < s; ++j) update += dt * (t.eb[j] * lambda * stage[j] + t.ib[j] * (m - stage[j]) / eps);
  stage.push_back(update);
  return stage;
}

}  // namespace hbgk
