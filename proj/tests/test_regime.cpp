#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hbgk/regime.hpp"
#include "support.hpp"

using namespace hbgk;
using namespace hbgk::testing;

namespace {

PrimitiveState prim(double rho, double u, double T) { return to_primitive(from_primitive(rho, u, T)); }

constexpr Mode kHierarchical[] = {Mode::euler_ns_kinetic, Mode::euler_kinetic, Mode::ns_kinetic, Mode::full_kinetic};

struct RandomSnapshot {
  std::vector<Regime> labels;
  std::vector<CellDiagnostics> diag;
};

RandomSnapshot random_snapshot(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> lab(0, 2);
  std::uniform_real_distribution<double> nu(0.0, 0.3), lg(-5.0, -1.0);
  RandomSnapshot s;
  for (int i = 0; i < n; ++i) {
    s.labels.push_back(static_cast<Regime>(lab(rng)));
    CellDiagnostics d;
    d.nu_ns = 1.0 + nu(rng);
    d.nu_b = 1.0 + nu(rng);
    d.g_norm = std::pow(10.0, lg(rng));
    d.closure_distance = s.labels.back() == Regime::kinetic ? std::pow(10.0, lg(rng)) : 0.0;
    s.diag.push_back(d);
  }
  return s;
}

int count(const std::vector<Regime>& l, Regime r) { return static_cast<int>(std::count(l.begin(), l.end(), r)); }

}  // namespace

TEST_CASE("labels and modes round-trip through their text forms") {
  for (Regime r : {Regime::euler, Regime::ns, Regime::kinetic}) CHECK(regime_from_label(regime_label(r)) == r);
  CHECK(regime_label(Regime::euler) == 'E');
  CHECK(regime_label(Regime::ns) == 'N');
  CHECK(regime_label(Regime::kinetic) == 'K');
  for (Mode m : {Mode::euler_ns_kinetic, Mode::euler_kinetic, Mode::ns_kinetic, Mode::full_kinetic, Mode::euler,
                 Mode::ns})
    CHECK(parse_mode(mode_name(m)) == m);
  CHECK_THROWS_AS(parse_mode("kinetic-only"), std::invalid_argument);
}

TEST_CASE("nu_ns: equilibrium value and a direct evaluation") {
  CHECK(nu_ns(prim(1.3, 0.2, 0.7), 0.0, 0.1) == 1.0);
  CHECK(nu_ns(prim(1.3, 0.2, 0.7), 5.0, 0.0) == 1.0);
  CHECK(std::abs(nu_ns(prim(1.0, 0.0, 1.0), 1.0, 0.01) - 1.015) < 1e-15);
}

TEST_CASE("nu_b: zero derivatives, reduction to nu_ns, Burnett term") {
  const auto p = prim(1.0, 0.0, 1.0);
  CHECK(nu_burnett(p, 0.0, 0.0, 0.0, 0.3) == 1.0);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    const auto q = prim(0.5 + std::abs(d(rng)), d(rng), 0.3 + std::abs(d(rng)));
    const double Tx = d(rng), eps = 0.01 * std::abs(d(rng));
    CHECK(nu_burnett(q, Tx, 0.0, 0.0, eps) == nu_ns(q, Tx, eps));
    CHECK(nu_burnett(q, Tx, d(rng), d(rng), eps) >= 1.0);
    CHECK(nu_ns(q, Tx, eps) >= 1.0);
  }
  CHECK(std::abs(burnett_b(p, 0.0, 1.0, 0.0, 0.1) + 0.01 * 25.0 / 6.0) < 1e-15);
  CHECK(std::abs(nu_burnett(p, 0.0, 1.0, 0.0, 0.1) - (1.0 + 25.0 / 600.0)) < 1e-15);
}

TEST_CASE("indicator derivatives: uniform, linear T, parabolic u") {
  auto s = make_setup(16, BoundaryKind::outflow);
  const auto U0 = sample_state(s.mesh, [](double) { return from_primitive(1.0, 0.4, 0.9); });
  const auto d0 = compute_indicator_derivatives(U0, s.mesh, s.basis);
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(d0.Tx[i]) < 1e-12);
    CHECK(std::abs(d0.ux[i]) < 1e-12);
    CHECK(std::abs(d0.uxx[i]) < 1e-10);
  }
  const auto U1 = sample_state(s.mesh, [](double x) { return from_primitive(1.0, 0.4, 0.5 + 0.8 * x); });
  const auto d1 = compute_indicator_derivatives(U1, s.mesh, s.basis);
  for (int i = 1; i < 15; ++i) {
    CHECK(std::abs(d1.Tx[i] - 0.8) < 1e-11);
    CHECK(std::abs(d1.ux[i]) < 1e-11);
    CHECK(std::abs(d1.uxx[i]) < 1e-9);
  }
  const auto U2 = sample_state(s.mesh, [](double x) { return from_primitive(1.0, 1.5 * (x - 0.5) * (x - 0.5), 1.0); });
  const auto d2 = compute_indicator_derivatives(U2, s.mesh, s.basis);
  for (int i = 2; i < 14; ++i) CHECK(std::abs(d2.uxx[i] - 3.0) < 1e-9);
}

TEST_CASE("classify: equilibrium goes to Euler from any start") {
  std::vector<CellDiagnostics> eq(6);
  std::vector<Regime> start{Regime::euler, Regime::ns, Regime::kinetic, Regime::kinetic, Regime::ns, Regime::euler};
  const auto next = classify(start, eq, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow);
  CHECK(count(next, Regime::euler) == 6);
  CHECK(classify(next, eq, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow) == next);
}

TEST_CASE("classify: threshold examples") {
  std::vector<CellDiagnostics> d(1);
  d[0].nu_b = 1.05;
  d[0].nu_ns = 1.04;
  std::vector<Regime> e{Regime::euler};
  CHECK(classify(e, d, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow)[0] == Regime::ns);

  d[0] = CellDiagnostics{};
  d[0].g_norm = 2e-3;
  d[0].closure_distance = 5e-4;
  std::vector<Regime> k{Regime::kinetic};
  CHECK(classify(k, d, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow)[0] == Regime::ns);

  d[0].closure_distance = 5e-3;
  CHECK(classify(k, d, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow)[0] == Regime::kinetic);

  d[0] = CellDiagnostics{};
  d[0].nu_b = 1.3;
  d[0].nu_ns = 1.05;
  CHECK(classify(e, d, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow)[0] == Regime::kinetic);
}

TEST_CASE("classify: an Euler cell between NS cells follows them") {
  std::vector<CellDiagnostics> d(3);
  d[0].nu_b = d[2].nu_b = 1.05;
  d[0].nu_ns = d[2].nu_ns = 1.04;
  d[0].g_norm = d[2].g_norm = 1.0;
  const std::vector<Regime> start(3, Regime::euler);
  const auto next = classify(start, d, Mode::euler_ns_kinetic, {}, BoundaryKind::outflow);
  CHECK(next == std::vector<Regime>(3, Regime::ns));
}

TEST_CASE("classify: independent of the visiting order") {
  std::mt19937 rng(42);
  for (Mode m : kHierarchical)
    for (auto bc : {BoundaryKind::periodic, BoundaryKind::outflow}) {
      const auto s = random_snapshot(rng, 40);
      const auto base = classify(s.labels, s.diag, m, {}, bc);
      for (int t = 0; t < 10; ++t) {
        std::vector<int> order(40);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(classify(s.labels, s.diag, m, {}, bc, order) == base);
      }
    }
}

TEST_CASE("classify: each mode keeps to its labels") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto s = random_snapshot(rng, 30);
    auto ek_start = s.labels, nk_start = s.labels;
    for (auto& l : ek_start)
      if (l == Regime::ns) l = Regime::euler;
    for (auto& l : nk_start)
      if (l == Regime::euler) l = Regime::ns;
    CHECK(count(classify(ek_start, s.diag, Mode::euler_kinetic, {}, BoundaryKind::periodic), Regime::ns) == 0);
    CHECK(count(classify(nk_start, s.diag, Mode::ns_kinetic, {}, BoundaryKind::periodic), Regime::euler) == 0);
    CHECK(count(classify(s.labels, s.diag, Mode::full_kinetic, {}, BoundaryKind::periodic), Regime::kinetic) == 30);
    CHECK(count(classify(s.labels, s.diag, Mode::euler, {}, BoundaryKind::periodic), Regime::euler) == 30);
    CHECK(count(classify(s.labels, s.diag, Mode::ns, {}, BoundaryKind::periodic), Regime::ns) == 30);
  }
}

TEST_CASE("classify: monotone in the thresholds") {
  std::mt19937 rng(8);
  for (Mode m : {Mode::euler_ns_kinetic, Mode::euler_kinetic, Mode::ns_kinetic})
    for (int t = 0; t < 30; ++t) {
      const auto s = random_snapshot(rng, 30);
      const Thresholds lo{1e-2, 1e-1, 1e-3};
      const Thresholds hi_eta{5e-2, 2e-1, 1e-3};
      const Thresholds lo_delta{1e-2, 1e-1, 1e-4};
      const auto a = classify(s.labels, s.diag, m, lo, BoundaryKind::outflow);
      const auto b = classify(s.labels, s.diag, m, hi_eta, BoundaryKind::outflow);
      const auto c = classify(s.labels, s.diag, m, lo_delta, BoundaryKind::outflow);
      CHECK(count(b, Regime::kinetic) <= count(a, Regime::kinetic));
      CHECK(30 - count(c, Regime::kinetic) <= 30 - count(a, Regime::kinetic));
    }
}

TEST_CASE("recovered g: zero for flat T, moment-free, carries the fluid heat flux") {
  auto s = make_setup(6, BoundaryKind::periodic, 1e-2, 0.0, 1.0, 10.0, 200);
  const auto U = smooth_state(s.mesh);
  ScalarField zero(6, 3, 0.0);
  CHECK(max_abs(recover_equilibrium_g(U, zero, s.grid).values()) == 0.0);

  const auto Tx = temperature_gradient(U, s.mesh, s.basis);
  const auto g = recover_equilibrium_g(U, Tx, s.grid);
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 3; ++k) {
      const auto m = discrete_moments(g.slice(i, k), s.grid);
      for (int c = 0; c < 3; ++c) CHECK(std::abs(m[c]) < 1e-8);
      const double qk = heat_flux_kinetic(g.slice(i, k), U(i, k), s.grid, 0.01);
      const double qf = heat_flux_fluid(to_primitive(U(i, k)), Tx(i, k), 0.01);
      CHECK(std::abs(qk - qf) <= 1e-6 * std::abs(qf) + 1e-15);
    }
}

TEST_CASE("regime map histogram") {
  RegimeMap m(5, Regime::kinetic);
  m.labels[0] = Regime::euler;
  m.labels[3] = Regime::ns;
  const auto h = m.histogram();
  CHECK(h == std::array<int, 3>{1, 1, 3});
}
