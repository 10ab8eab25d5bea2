#pragma once

// Text frames: one '#' header line with key=value metadata, then one
// whitespace-separated row per Gauss node:
//   x rho u T q regime nu_ns nu_b
// with regime written as E, N or K and every number at 17 significant digits.

#include <stdexcept>
#include <string>
#include <vector>

#include "hbgk/driver.hpp"

namespace hbgk {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Frame {
  double t = 0.0;
  int step = 0;
  std::string mode;
  std::string eps;
  std::string problem;
  std::vector<double> x, rho, u, T, q;
  std::vector<char> regime;
  std::vector<double> nu_ns, nu_b;

  std::size_t rows() const { return x.size(); }
};

inline constexpr const char* kFrameColumns = "x,rho,u,T,q,regime,nu_ns,nu_b";

/// Snapshot of the simulation; per-cell quantities repeat on the cell's nodes.
Frame make_frame(const Simulation& sim);

void write_frame(const Frame& frame, const std::string& path);
/// Throws IoError with path and line on malformed input.
Frame read_frame(const std::string& path);

std::string report_json(const RunReport& report);
void write_report(const RunReport& report, const std::string& path);

}  // namespace hbgk
