#include "hbgk/frame_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace hbgk {

Frame make_frame(const Simulation& sim) {
  const auto& mesh = sim.mesh;
  const int nq = mesh.n_nodes;
  const auto q = heat_flux_nodes(sim);
  const auto prim = nodal_primitives(sim.U);
  Frame f;
  f.t = sim.t;
  f.step = sim.step;
  f.mode = mode_name(sim.config.mode);
  f.eps = sim.config.eps.describe();
  f.problem = problem_name(sim.config.problem);
  for (int i = 0; i < mesh.n_cells; ++i)
    for (int k = 0; k < nq; ++k) {
      const auto& p = prim(i, k);
      f.x.push_back(mesh.node_x(i, k));
      f.rho.push_back(p.rho);
      f.u.push_back(p.u);
      f.T.push_back(p.T);
      f.q.push_back(q(i, k));
      f.regime.push_back(regime_label(sim.regimes.labels[i]));
      f.nu_ns.push_back(sim.regimes.diagnostics[i].nu_ns);
      f.nu_b.push_back(sim.regimes.diagnostics[i].nu_b);
    }
  return f;
}

void write_frame(const Frame& frame, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw IoError("cannot open '" + path + "' for writing");
  std::fprintf(fp, "# t=%.17g step=%d mode=%s eps=%s problem=%s columns=%s\n", frame.t, frame.step,
               frame.mode.c_str(), frame.eps.c_str(), frame.problem.c_str(), kFrameColumns);
  for (std::size_t r = 0; r < frame.rows(); ++r)
    std::fprintf(fp, "%.17g %.17g %.17g %.17g %.17g %c %.17g %.17g\n", frame.x[r], frame.rho[r], frame.u[r],
                 frame.T[r], frame.q[r], frame.regime[r], frame.nu_ns[r], frame.nu_b[r]);
  if (std::fclose(fp) != 0) throw IoError("error writing '" + path + "'");
}

Frame read_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("#", 0) != 0) throw IoError(path + ":1: missing '#' header");

  std::map<std::string, std::string> meta;
  std::istringstream hs(line.substr(1));
  for (std::string tok; hs >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw IoError(path + ":1: malformed header token '" + tok + "'");
    meta[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"t", "step", "mode", "eps", "problem", "columns"})
    if (!meta.count(key)) throw IoError(path + ":1: header lacks '" + key + "'");
  if (meta["columns"] != kFrameColumns) throw IoError(path + ":1: unexpected columns '" + meta["columns"] + "'");

  Frame f;
  try {
    f.t = std::stod(meta["t"]);
    f.step = std::stoi(meta["step"]);
  } catch (const std::exception&) {
    throw IoError(path + ":1: bad t or step");
  }
  f.mode = meta["mode"];
  f.eps = meta["eps"];
  f.problem = meta["problem"];

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream rs(line);
    double x, rho, u, T, q, a, b;
    std::string label, extra;
    if (!(rs >> x >> rho >> u >> T >> q >> label >> a >> b) || (rs >> extra) || label.size() != 1 ||
        (label[0] != 'E' && label[0] != 'N' && label[0] != 'K'))
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed row");
    f.x.push_back(x);
    f.rho.push_back(rho);
    f.u.push_back(u);
    f.T.push_back(T);
    f.q.push_back(q);
    f.regime.push_back(label[0]);
    f.nu_ns.push_back(a);
    f.nu_b.push_back(b);
  }
  return f;
}

std::string report_json(const RunReport& r) {
  nlohmann::json j;
  j["problem"] = r.problem;
  j["mode"] = r.mode;
  j["eps"] = r.eps;
  j["nx"] = r.nx;
  j["nv"] = r.nv;
  j["steps"] = r.steps;
  j["t_final"] = r.t_final;
  j["timings"] = {{"total", r.timings.total},
                  {"classify", r.timings.classify},
                  {"macro", r.timings.step.macro},
                  {"kinetic", r.timings.step.kinetic},
                  {"coupling", r.timings.step.coupling}};
  auto& h = j["histogram"] = nlohmann::json::array();
  for (const auto& row : r.histogram) h.push_back({row[0], row[1], row[2]});
  auto totals = [](const ConservedState& q) { return nlohmann::json{q.rho, q.mom, q.energy}; };
  j["conservation"] = {{"initial", totals(r.initial_totals)},
                       {"final", totals(r.final_totals)},
                       {"drift", {r.drift[0], r.drift[1], r.drift[2]}}};
  j["frames"] = r.frame_files;
  return j.dump(2);
}

void write_report(const RunReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << report_json(report) << '\n';
  if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace hbgk
