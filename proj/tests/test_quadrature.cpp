#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hbgk/quadrature.hpp"

using namespace hbgk;

namespace {

double exact_moment(int p) {
  // int_{-1/2}^{1/2} x^p dx
  return p % 2 ? 0.0 : 2.0 * std::pow(0.5, p + 1) / (p + 1);
}

}  // namespace

TEST_CASE("gauss rule: midpoint and three-point values") {
  const auto r1 = gauss_legendre_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1.nodes[0]) < 1e-16);
  CHECK(r1.weights[0] == doctest::Approx(1.0));

  const auto r3 = gauss_legendre_rule(3);
  const double s = std::sqrt(15.0) / 10.0;
  CHECK(std::abs(r3.nodes[0] + s) < 1e-15);
  CHECK(std::abs(r3.nodes[1]) < 1e-15);
  CHECK(std::abs(r3.nodes[2] - s) < 1e-15);
  CHECK(std::abs(r3.weights[0] - 5.0 / 18.0) < 1e-15);
  CHECK(std::abs(r3.weights[1] - 4.0 / 9.0) < 1e-15);
  CHECK(std::abs(r3.weights[2] - 5.0 / 18.0) < 1e-15);
}

TEST_CASE("gauss rule: exact to degree 2K+1, symmetric, weights sum to one") {
  for (int n = 1; n <= 5; ++n) {
    const auto r = gauss_legendre_rule(n);
    double wsum = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) < 1e-14);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(r.nodes[k] + r.nodes[n - 1 - k]) < 1e-15);
      CHECK(r.nodes[k] > -0.5);
      CHECK(r.nodes[k] < 0.5);
      if (k) CHECK(r.nodes[k] > r.nodes[k - 1]);
    }
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double q = 0.0;
      for (int k = 0; k < n; ++k) q += r.weights[k] * std::pow(r.nodes[k], p);
      CHECK(std::abs(q - exact_moment(p)) < 1e-13);
    }
  }
}

TEST_CASE("gauss rule: rejects zero points") { CHECK_THROWS_AS(gauss_legendre_rule(0), std::invalid_argument); }

TEST_CASE("nodal basis: rows of the derivative matrix sum to zero, traces to one") {
  for (int n = 1; n <= 5; ++n) {
    const auto b = build_nodal_basis(gauss_legendre_rule(n));
    double l = 0.0, r = 0.0;
    for (int k = 0; k < n; ++k) {
      l += b.left_trace[k];
      r += b.right_trace[k];
      double row = 0.0;
      for (int m = 0; m < n; ++m) row += b.diff(k, m);
      CHECK(std::abs(row) < 1e-12);
      for (int m = 0; m < n; ++m) CHECK(std::abs(b.eval(m, b.rule.nodes[k]) - (k == m ? 1.0 : 0.0)) < 1e-14);
    }
    CHECK(std::abs(l - 1.0) < 1e-14);
    CHECK(std::abs(r - 1.0) < 1e-14);
  }
}

TEST_CASE("nodal basis: K=1 derivative rows are (-sqrt3, sqrt3)") {
  const auto b = build_nodal_basis(gauss_legendre_rule(2));
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(b.diff(k, 0) + std::sqrt(3.0)) < 1e-13);
    CHECK(std::abs(b.diff(k, 1) - std::sqrt(3.0)) < 1e-13);
  }
}

TEST_CASE("nodal basis: K=2 differentiates x^2 exactly") {
  const auto b = build_nodal_basis(gauss_legendre_rule(3));
  for (int k = 0; k < 3; ++k) {
    double d = 0.0;
    for (int m = 0; m < 3; ++m) d += b.diff(k, m) * b.rule.nodes[m] * b.rule.nodes[m];
    CHECK(std::abs(d - 2.0 * b.rule.nodes[k]) < 1e-13);
  }
}

TEST_CASE("nodal basis: interpolation and traces reproduce degree-K polynomials") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> c(-2.0, 2.0), xi(-0.5, 0.5);
  for (int n = 1; n <= 5; ++n) {
    const auto b = build_nodal_basis(gauss_legendre_rule(n));
    std::vector<double> coef(n);
    for (auto& a : coef) a = c(rng);
    auto poly = [&](double x) {
      double s = 0.0;
      for (int p = n - 1; p >= 0; --p) s = s * x + coef[p];
      return s;
    };
    std::vector<double> nodal(n);
    for (int k = 0; k < n; ++k) nodal[k] = poly(b.rule.nodes[k]);
    for (int t = 0; t < 50; ++t) {
      const double x = xi(rng);
      CHECK(std::abs(b.interpolate(nodal, x) - poly(x)) < 1e-12);
    }
    double l = 0.0, r = 0.0;
    for (int k = 0; k < n; ++k) {
      l += b.left_trace[k] * nodal[k];
      r += b.right_trace[k] * nodal[k];
    }
    CHECK(std::abs(l - poly(-0.5)) < 1e-12);
    CHECK(std::abs(r - poly(0.5)) < 1e-12);
    CHECK(std::abs(b.interpolate(nodal, -0.5) - l) < 1e-12);
  }
}
