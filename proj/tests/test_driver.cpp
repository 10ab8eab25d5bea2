#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "hbgk/driver.hpp"
#include "hbgk/frame_io.hpp"
#include "hbgk/imex.hpp"

using namespace hbgk;
namespace fs = std::filesystem;

namespace {

ProblemConfig small(ProblemId p, Mode m, double eps = 1e-2) {
  auto c = ProblemConfig::defaults(p, eps);
  c.mode = m;
  c.nx = 16;
  c.nv = 40;
  c.t_final = 0.004;
  return c;
}

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("hbgk_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("problem names") {
  for (auto p : {ProblemId::sod, ProblemId::blast, ProblemId::mixed}) CHECK(parse_problem(problem_name(p)) == p);
  CHECK_THROWS_AS(parse_problem("riemann"), std::invalid_argument);
}

TEST_CASE("config checks name the field") {
  auto c = ProblemConfig::defaults(ProblemId::sod, 1e-3);
  CHECK_NOTHROW(c.check());
  auto bad = c;
  bad.nx = 0;
  CHECK_THROWS_WITH_AS(bad.check(), doctest::Contains("nx"), std::invalid_argument);
  bad = c;
  bad.t_final = 0.0;
  CHECK_THROWS_WITH_AS(bad.check(), doctest::Contains("t_final"), std::invalid_argument);
  bad = c;
  bad.thresholds.delta0 = 0.0;
  CHECK_THROWS_WITH_AS(bad.check(), doctest::Contains("thresholds"), std::invalid_argument);
}

TEST_CASE("sod: a cell straddling x = 0.5 samples the jump pointwise") {
  auto c = ProblemConfig::defaults(ProblemId::sod, 1e-3);
  c.nx = 51;
  const auto sim = init_problem(c);
  int straddle = -1;
  for (int i = 0; i < c.nx; ++i)
    if (sim->mesh.faces[i] < 0.5 && sim->mesh.faces[i + 1] > 0.5) straddle = i;
  REQUIRE(straddle >= 0);
  for (int k = 0; k < 3; ++k) {
    const double x = sim->mesh.node_x(straddle, k);
    const auto p = to_primitive(sim->U(straddle, k));
    CHECK(p.rho == (x < 0.5 ? 1.0 : 0.125));
  }
  CHECK(sim->regimes.histogram() == std::array<int, 3>{0, 0, 51});
  for (double v : sim->g.values()) CHECK(v == 0.0);
}

TEST_CASE("blast: three constant states, reflective walls") {
  const auto sim = init_problem(ProblemConfig::defaults(ProblemId::blast, 1e-2));
  CHECK(sim->mesh.boundary == BoundaryKind::reflective);
  for (int i = 0; i < sim->mesh.n_cells; ++i)
    for (int k = 0; k < 3; ++k) {
      const double x = sim->mesh.node_x(i, k);
      const auto p = to_primitive(sim->U(i, k));
      if (x < 0.2) {
        CHECK(p.u == 1.0);
        CHECK(p.T == 2.0);
      } else if (x < 0.8) {
        CHECK(p.u == 0.0);
        CHECK(p.T == 0.25);
      } else {
        CHECK(p.u == -1.0);
      }
    }
}

TEST_CASE("mixed: Knudsen profile and the two-beam micro part") {
  auto c = ProblemConfig::defaults(ProblemId::mixed, 1e-3);
  CHECK(std::abs(c.eps(0.0) - (1e-3 + std::tanh(1.0))) < 1e-15);
  CHECK(std::abs(c.eps(0.0) - 0.7626) < 1e-4);
  CHECK(std::abs(c.eps(0.5) - 1e-3) < 1e-8);
  CHECK(std::abs(c.eps(-0.5) - 1e-3) < 1e-8);
  c.nx = 20;
  const auto sim = init_problem(c);
  for (int i = 0; i < 20; ++i)
    for (int k = 0; k < 3; ++k) {
      const auto m = discrete_moments(sim->g.slice(i, k), sim->grid);
      for (int q = 0; q < 3; ++q) CHECK(std::abs(m[q]) < 1e-8 / sim->mesh.eps_node(i, k));
      const auto p = to_primitive(sim->U(i, k));
      CHECK(p.u == 0.0);
    }
}

TEST_CASE("conservation drift falls back to the mass scale for zero totals") {
  const auto d = conservation_drift({2.0, 0.0, 4.0}, {2.0, 1e-12, 4.0 + 4e-10});
  CHECK(d[0] == 0.0);
  CHECK(std::abs(d[1] - 5e-13) < 1e-25);
  CHECK(std::abs(d[2] - 1e-10) < 1e-16);
}

TEST_CASE("run: pure Euler mode is the plain RK-DG loop") {
  auto c = small(ProblemId::sod, Mode::euler);
  auto sim = init_problem(c);
  StateField U = sim->U;
  const auto rep = run(*sim);

  double t = 0.0;
  const auto tab = ars443();
  int steps = 0;
  while (t < c.t_final * (1.0 - 1e-14)) {
    double dt = cfl_dt(U, sim->mesh, c.v_cut, c.cfl);
    const bool last = t + dt >= c.t_final * (1.0 - 1e-12);
    if (last) dt = c.t_final - t;
    U = euler_rk_step(U, sim->mesh, sim->basis, tab, dt);
    t = last ? c.t_final : t + dt;
    ++steps;
  }
  CHECK(rep.steps == steps);
  CHECK(sim->U == U);
}

TEST_CASE("run: histograms are total and respect the mode") {
  for (Mode m : {Mode::euler_ns_kinetic, Mode::euler_kinetic, Mode::ns_kinetic, Mode::full_kinetic}) {
    const auto rep = run(small(ProblemId::sod, m, 1e-3));
    REQUIRE(rep.histogram.size() == static_cast<std::size_t>(rep.steps));
    for (const auto& h : rep.histogram) {
      CHECK(h[0] + h[1] + h[2] == 16);
      if (m == Mode::euler_kinetic) CHECK(h[1] == 0);
      if (m == Mode::ns_kinetic) CHECK(h[0] == 0);
      if (m == Mode::full_kinetic) CHECK(h[2] == 16);
    }
    CHECK(rep.t_final == doctest::Approx(0.004).epsilon(1e-14));
  }
}

TEST_CASE("run: frames land on their times and identical runs write identical frames") {
  const auto a = scratch_dir("frames_a"), b = scratch_dir("frames_b");
  auto c = small(ProblemId::sod, Mode::euler_ns_kinetic, 1e-3);
  c.frames = 4;
  c.out_dir = a.string();
  const auto ra = run(c);
  c.out_dir = b.string();
  const auto rb = run(c);
  REQUIRE(ra.frame_files.size() == 5);
  for (std::size_t f = 0; f < 5; ++f) {
    const auto fa = read_frame(ra.frame_files[f]);
    const auto fb = read_frame(rb.frame_files[f]);
    CHECK(fa.t == doctest::Approx(f * 0.001).epsilon(1e-12));
    CHECK(fa.rho == fb.rho);
    CHECK(fa.regime == fb.regime);
    CHECK(fa.q == fb.q);
  }
}

TEST_CASE("run: observer sees the frame times even without output") {
  auto c = small(ProblemId::sod, Mode::full_kinetic);
  c.frames = 2;
  std::vector<double> times;
  run(c, [&](const Simulation& s) { times.push_back(s.t); });
  CHECK(std::find(times.begin(), times.end(), 0.002) != times.end());
  CHECK(times.back() == 0.004);
}

TEST_CASE("run: a non-physical state names step and time") {
  auto c = small(ProblemId::sod, Mode::euler);
  auto sim = init_problem(c);
  sim->U(3, 1) = ConservedState{1.0, 0.0, -1.0};
  CHECK_THROWS_WITH_AS(run(*sim), doctest::Contains("at step 0"), NonPhysicalState);
}

TEST_CASE("timing compare: full-kinetic first, savings relative to it") {
  const auto rows = timing_compare(small(ProblemId::sod, Mode::full_kinetic, 1e-3));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].mode == "full-kinetic");
  CHECK(rows[0].savings == 0.0);
  for (const auto& r : rows) {
    CHECK(r.wall > 0.0);
    CHECK(r.final_histogram[0] + r.final_histogram[1] + r.final_histogram[2] == 16);
  }
}

TEST_CASE("frames: round trip at full precision, schema, labels") {
  auto c = small(ProblemId::blast, Mode::euler_ns_kinetic);
  auto sim = init_problem(c);
  run(*sim);
  refresh_diagnostics(*sim);
  const auto f = make_frame(*sim);
  CHECK(f.rows() == static_cast<std::size_t>(c.nx * 3));
  for (char r : f.regime) CHECK((r == 'E' || r == 'N' || r == 'K'));
  const auto dir = scratch_dir("roundtrip");
  const auto path = (dir / "f.txt").string();
  write_frame(f, path);
  const auto g = read_frame(path);
  CHECK(g.t == f.t);
  CHECK(g.step == f.step);
  CHECK(g.mode == f.mode);
  CHECK(g.eps == f.eps);
  CHECK(g.problem == f.problem);
  CHECK(g.x == f.x);
  CHECK(g.rho == f.rho);
  CHECK(g.u == f.u);
  CHECK(g.T == f.T);
  CHECK(g.q == f.q);
  CHECK(g.regime == f.regime);
  CHECK(g.nu_ns == f.nu_ns);
  CHECK(g.nu_b == f.nu_b);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("# t=", 0) == 0);
  CHECK(header.find(std::string("columns=") + kFrameColumns) != std::string::npos);
}

TEST_CASE("frames: malformed files report path and line") {
  const auto dir = scratch_dir("malformed");
  const auto missing = (dir / "nope.txt").string();
  CHECK_THROWS_WITH_AS(read_frame(missing), doctest::Contains("nope.txt"), IoError);

  const auto no_header = (dir / "a.txt").string();
  std::ofstream(no_header) << "0 1 0 1 0 K 1 1\n";
  CHECK_THROWS_WITH_AS(read_frame(no_header), doctest::Contains("a.txt:1"), IoError);

  const auto bad_row = (dir / "b.txt").string();
  std::ofstream(bad_row) << "# t=0 step=0 mode=euler eps=0.1 problem=sod columns=" << kFrameColumns << "\n"
                         << "0 1 0 1 0 K 1 1\n"
                         << "0 1 0 oops\n";
  CHECK_THROWS_WITH_AS(read_frame(bad_row), doctest::Contains("b.txt:3"), IoError);

  CHECK_THROWS_AS(write_frame(Frame{}, (dir / "no_such_dir" / "f.txt").string()), IoError);
}

TEST_CASE("report: json carries timings, histograms and drift") {
  auto c = small(ProblemId::sod, Mode::euler_ns_kinetic, 1e-3);
  const auto rep = run(c);
  const auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j["problem"] == "sod");
  CHECK(j["mode"] == "euler-ns-kinetic");
  CHECK(j["steps"] == rep.steps);
  CHECK(j["histogram"].size() == rep.histogram.size());
  CHECK(j["conservation"]["drift"].size() == 3);
  CHECK(j["timings"]["total"].get<double>() > 0.0);
  const auto dir = scratch_dir("report");
  write_report(rep, (dir / "r.json").string());
  CHECK(fs::file_size(dir / "r.json") > 0);
}
