// Serial reference vs. OpenMP kernels for the oracle sweep and grid scan.
#include <benchmark/benchmark.h>

#include "causabound/oracle.hpp"
#include "causabound/sweep.hpp"

using namespace causabound;

static void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_sweep(42, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_sweep_parallel(42, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SweepParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_GridSerial(benchmark::State& state) {
  const auto s = random_scenario(Structure::MediatorCovariate, 7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(grid_scan_bounds(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GridSerial)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

static void BM_GridParallel(benchmark::State& state) {
  const auto s = random_scenario(Structure::MediatorCovariate, 7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(grid_scan_bounds_parallel(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GridParallel)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
