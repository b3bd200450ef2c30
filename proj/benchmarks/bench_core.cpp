#include <memory>
#include <numbers>

#include <benchmark/benchmark.h>

#include "rydw/eigensolver.hpp"
#include "rydw/hamiltonian.hpp"
#include "rydw/protocol.hpp"

using namespace rydw;

namespace {

PhysicalParams params(int n, int m, double alpha) {
  PhysicalParams p;
  p.a = 4.0;
  p.omega_b = 2.0 * std::numbers::pi * 2.0e3;
  p.alpha = alpha;
  p.n_sites = n;
  p.max_bosons = m;
  return at_sweet_spot(p);
}

// Matrix-free sector apply, N = 8 with M from the argument.
void BM_SectorApply(benchmark::State& state) {
  const auto op = sector_operator(params(8, static_cast<int>(state.range(0)), 0.1), std::numbers::pi);
  const Vector v = random_unit_vector(op.dimension(), 1);
  Vector w(v.size());
  for (auto _ : state) {
    op.apply(std::span<const Complex>(v.data(), op.dimension()), std::span<Complex>(w.data(), op.dimension()));
    benchmark::DoNotOptimize(w.data());
  }
  state.counters["dim"] = static_cast<double>(op.dimension());
}
BENCHMARK(BM_SectorApply)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_SectorLowest(benchmark::State& state) {
  const auto op = sector_operator(params(8, static_cast<int>(state.range(0)), 0.1), std::numbers::pi);
  for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(op).eigenvalues.front());
  state.counters["dim"] = static_cast<double>(op.dimension());
}
BENCHMARK(BM_SectorLowest)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// A fixed number of propagation steps of the driven N = 4 chain.
void BM_PropagationSteps(benchmark::State& state) {
  const PhysicalParams p = params(4, 4, 0.05);
  const DriveSpec d = resonant_drive(p);
  SimulationOptions o;
  o.record_stride = 1000;
  const double t = 200.0 * default_time_step(p, d, o);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_drive(p, d, t, o).fidelity.back());
  state.counters["steps"] = 200;
}
BENCHMARK(BM_PropagationSteps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
