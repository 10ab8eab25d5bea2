// hbgk: run one benchmark problem, or compare the cost of the regime
// hierarchies against the full kinetic solver.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "hbgk/driver.hpp"
#include "hbgk/frame_io.hpp"
#include "hbgk/parallel.hpp"

namespace {

int fail(const char* category, const std::string& msg) {
  std::fprintf(stderr, "error: %s: %s\n", category, msg.c_str());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical Euler / Navier-Stokes / BGK solver"};
  std::string problem = "sod", mode = "euler-ns-kinetic", out_dir, limiter = "step";
  int nx = 50, nv = 100, frames = 0, threads = 0;
  double eps = 1e-3, t_final = -1.0, cfl = 0.05, mtvb = 1.0;
  hbgk::Thresholds th;
  bool compare = false;

  app.add_option("--problem", problem, "sod | blast | mixed")->capture_default_str();
  app.add_option("--mode", mode, "full-kinetic | euler-kinetic | ns-kinetic | euler-ns-kinetic | euler | ns")
      ->capture_default_str();
  app.add_option("--nx", nx, "number of cells")->capture_default_str();
  app.add_option("--nv", nv, "number of velocity points")->capture_default_str();
  app.add_option("--eps", eps, "Knudsen number (eps0 for the mixed problem)")->capture_default_str();
  app.add_option("--tfinal", t_final, "final time (default: the problem's)");
  app.add_option("--cfl", cfl, "CFL number")->capture_default_str();
  app.add_option("--mtvb", mtvb, "TVB constant M")->capture_default_str();
  app.add_option("--limiter", limiter, "stage | step | off")->capture_default_str();
  app.add_option("--eta0", th.eta0, "Euler -> NS threshold")->capture_default_str();
  app.add_option("--eta1", th.eta1, "NS -> kinetic threshold")->capture_default_str();
  app.add_option("--delta0", th.delta0, "kinetic -> fluid threshold")->capture_default_str();
  app.add_option("--frames", frames, "number of evenly spaced output frames")->capture_default_str();
  app.add_option("--out-dir", out_dir, "directory for frames and report.json");
  app.add_option("--threads", threads, "OpenMP threads, 0 = deterministic single thread")->capture_default_str();
  app.add_flag("--compare", compare, "time full-kinetic against the three hierarchies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("config", e.what());
  }

  hbgk::ProblemConfig cfg;
  try {
    cfg = hbgk::ProblemConfig::defaults(hbgk::parse_problem(problem), eps);
    cfg.mode = hbgk::parse_mode(mode);
    cfg.nx = nx;
    cfg.nv = nv;
    if (t_final > 0.0) cfg.t_final = t_final;
    cfg.cfl = cfl;
    cfg.m_tvb = mtvb;
    cfg.thresholds = th;
    cfg.frames = frames;
    cfg.out_dir = out_dir;
    if (limiter == "stage")
      cfg.limiter = hbgk::LimiterPolicy::every_stage;
    else if (limiter == "step")
      cfg.limiter = hbgk::LimiterPolicy::step_end;
    else if (limiter == "off")
      cfg.limiter = hbgk::LimiterPolicy::off;
    else
      throw std::invalid_argument("unknown limiter '" + limiter + "'");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    cfg.check();
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what());
  }
  hbgk::set_thread_count(threads);

  try {
    if (compare) {
      const auto rows = hbgk::timing_compare(cfg);
      std::printf("%-18s %10s %9s %6s %6s %6s\n", "mode", "wall[s]", "savings", "E", "N", "K");
      for (const auto& r : rows)
        std::printf("%-18s %10.3f %8.1f%% %6d %6d %6d\n", r.mode.c_str(), r.wall, 100.0 * r.savings,
                    r.final_histogram[0], r.final_histogram[1], r.final_histogram[2]);
      return 0;
    }
    auto sim = hbgk::init_problem(cfg);
    const auto rep = hbgk::run(*sim);
    const auto h = sim->regimes.histogram();
    std::printf("problem=%s mode=%s eps=%s nx=%d nv=%d steps=%d t=%.6g wall=%.3fs E=%d N=%d K=%d\n",
                rep.problem.c_str(), rep.mode.c_str(), rep.eps.c_str(), rep.nx, rep.nv, rep.steps, rep.t_final,
                rep.timings.total, h[0], h[1], h[2]);
    std::printf("drift mass=%.3e momentum=%.3e energy=%.3e\n", rep.drift[0], rep.drift[1], rep.drift[2]);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      hbgk::write_report(rep, (std::filesystem::path(out_dir) / "report.json").string());
    }
  } catch (const hbgk::NonPhysicalState& e) {
    return fail("nonphysical", e.what());
  } catch (const hbgk::IoError& e) {
    return fail("io", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail("io", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what());
  }
  return 0;
}
