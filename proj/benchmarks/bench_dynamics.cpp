#include <benchmark/benchmark.h>

#include <numbers>

#include "nrq/dynamics.hpp"
#include "nrq/experiments.hpp"
#include "nrq/observables.hpp"

namespace {

using namespace nrq;

constexpr double kPi = std::numbers::pi;

ModelParams driven() { return preset_model(1.5 * kPi, Drive{Qubit::One, kPresetDriveAmplitude}); }

void BM_BuildLiouvillian(benchmark::State& state) {
  const ModelParams m = driven();
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(m));
}
BENCHMARK(BM_BuildLiouvillian);

void BM_EvolveRk4Transient(benchmark::State& state) {
  const Liouvillian L = build_liouvillian(driven());
  const auto rho0 = DensityMatrix::from_initial(InitialState::EG);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_rk4(rho0, L, transient_grid()));
}
BENCHMARK(BM_EvolveRk4Transient)->Unit(benchmark::kMillisecond);

void BM_EvolveExpmTransient(benchmark::State& state) {
  const Liouvillian L = build_liouvillian(driven());
  const auto rho0 = DensityMatrix::from_initial(InitialState::EG);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_expm(rho0, L, transient_grid()));
}
BENCHMARK(BM_EvolveExpmTransient)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
  const Liouvillian L = build_liouvillian(driven());
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(L));
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMicrosecond);

void BM_Concurrence(benchmark::State& state) {
  const auto rho = steady_state(build_liouvillian(driven())).state;
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_IsolationGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_figure(FigureId::F2a));
}
BENCHMARK(BM_IsolationGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
