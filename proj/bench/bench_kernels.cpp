// Spatial kernels against their serial reference versions, on the mixed
// problem state (non-zero g everywhere). The second argument is the OpenMP
// thread count for the optimised kernels.

#include <map>
#include <memory>

#include <benchmark/benchmark.h>

#include "hbgk/driver.hpp"
#include "hbgk/parallel.hpp"
#include "hbgk/reference_kernels.hpp"

namespace {

using namespace hbgk;

const Simulation& state(int nx) {
  static std::map<int, std::unique_ptr<Simulation>> cache;
  auto& s = cache[nx];
  if (!s) {
    auto c = ProblemConfig::defaults(ProblemId::mixed, 1e-3);
    c.nx = nx;
    s = init_problem(c);
  }
  return *s;
}

double lambda(const Simulation& s) { return max_wave_speed(s.U.values()); }

void BM_euler_rhs(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  set_thread_count(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(euler_weak_rhs(s.U, s.mesh, s.basis, lambda(s)));
}

void BM_euler_rhs_reference(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::euler_weak_rhs(s.U, s.mesh, s.basis, lambda(s)));
}

void BM_micro_coupling(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  set_thread_count(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(micro_coupling_rhs(s.g, s.mesh, s.basis, s.grid));
}

void BM_micro_coupling_reference(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::micro_coupling_rhs(s.g, s.mesh, s.basis, s.grid));
}

void BM_transport(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  set_thread_count(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(transport_rhs(s.g, s.U, s.mesh, s.basis, s.grid));
}

void BM_transport_reference(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::transport_rhs(s.g, s.U, s.mesh, s.basis, s.grid));
}

void BM_s2(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  set_thread_count(static_cast<int>(st.range(1)));
  const auto r = temperature_gradient(s.U, s.mesh, s.basis);
  for (auto _ : st) benchmark::DoNotOptimize(relaxation_sources(s.g, s.U, r, s.mesh, s.basis, s.grid));
}

void BM_s2_reference(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  const auto r = temperature_gradient(s.U, s.mesh, s.basis);
  for (auto _ : st) benchmark::DoNotOptimize(reference::relaxation_source_s2(s.U, r, s.mesh, s.basis, s.grid));
}

void BM_tvb(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  set_thread_count(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(tvb_limit(s.U, s.mesh, s.basis, 1.0));
}

void BM_tvb_reference(benchmark::State& st) {
  const auto& s = state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::tvb_limit(s.U, s.mesh, s.basis, 1.0));
}

void parallel_args(benchmark::internal::Benchmark* b) {
  for (int nx : {50, 200})
    for (int t : {1, 2, 4}) b->Args({nx, t});
}

void serial_args(benchmark::internal::Benchmark* b) {
  for (int nx : {50, 200}) b->Args({nx, 1});
}

}  // namespace

BENCHMARK(BM_euler_rhs)->Apply(parallel_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_euler_rhs_reference)->Apply(serial_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_micro_coupling)->Apply(parallel_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_micro_coupling_reference)->Apply(serial_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_transport)->Apply(parallel_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_transport_reference)->Apply(serial_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_s2)->Apply(parallel_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_s2_reference)->Apply(serial_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_tvb)->Apply(parallel_args)->ArgNames({"nx", "threads"});
BENCHMARK(BM_tvb_reference)->Apply(serial_args)->ArgNames({"nx", "threads"});

BENCHMARK_MAIN();
