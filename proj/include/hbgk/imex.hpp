#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hbgk {

/// Exact rational n / d, d > 0, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Paired explicit (ã, b̃, c̃) / diagonally implicit (a, b, c) Runge-Kutta
/// tables with s stages, rows and columns 0-based.
struct DoubleButcherTableau {
  int stages = 0;
  std::vector<std::vector<Rational>> explicit_a;  // s x s
  std::vector<Rational> explicit_b;
  std::vector<Rational> explicit_c;
  std::vector<std::vector<Rational>> implicit_a;  // s x s
  std::vector<Rational> implicit_b;
  std::vector<Rational> implicit_c;

  // Floating-point copies, filled by finalize().
  std::vector<double> ea, ia;  // row-major
  std::vector<double> eb, ib;

  double at(int l, int j) const { return ea[static_cast<std::size_t>(l) * stages + j]; }
  double a(int l, int j) const { return ia[static_cast<std::size_t>(l) * stages + j]; }
  /// true when column j of the explicit table has a non-zero entry below row j
  /// or a non-zero weight, i.e. some later stage reads the explicit term of stage j.
  bool explicit_column_used(int j) const;
  bool implicit_column_used(int j) const;

  void finalize();
};

/// ARS(4,4,3): third order, five stages, globally stiffly accurate.
DoubleButcherTableau ars443();

struct TableauViolation {
  std::string predicate;  // e.g. "not globally stiffly accurate"
  int row = -1;
  int col = -1;
  std::string describe() const;
};

/// Checks shapes, triangularity, the row-sum relations for c and c̃, and global
/// stiff accuracy. Returns the first violated predicate, or nothing.
std::optional<TableauViolation> validate(const DoubleButcherTableau& t);

struct StageWeights {
  std::vector<double> explicit_row;  // ã_{l,0..l-1}
  std::vector<double> implicit_row;  // a_{l,0..l}
};

/// l is 1-based, 1 <= l <= s; throws std::out_of_range otherwise.
StageWeights stage_weights(const DoubleButcherTableau& t, int l);

/// IMEX step of the scalar ODE y' = lambda y + (m - y) / eps (explicit part
/// lambda y, implicit part (m - y) / eps). Returns every stage value followed by
/// the update built from the weights b̃, b.
std::vector<double> scalar_relaxation_step(const DoubleButcherTableau& t, double y, double lambda, double m,
                                           double eps, double dt);

}  // namespace hbgk
