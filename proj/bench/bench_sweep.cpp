// Serial reference sweep against the OpenMP sweep on the same grids.

#include <benchmark/benchmark.h>

#include "nbound/sweep.hpp"

using namespace nbound;

namespace {

SweepSpec spec_for(int kind, int steps) {
  SweepSpec s;
  s.steps = steps;
  s.log_spacing = true;
  switch (kind) {
    case 0:
      s.kind = Kind::PoschlTeller;
      s.g_lo = 0.5;
      s.g_hi = 200.0;
      break;
    case 1:
      s.kind = Kind::Yukawa;
      s.g_lo = 1.0;
      s.g_hi = 100.0;
      break;
    default:
      s.kind = Kind::Stis;
      s.alpha = 100.0;
      s.g_lo = 1.0;
      s.g_hi = 300.0;
      break;
  }
  return s;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * (spec.steps + 1));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_parallel(spec));
  state.SetItemsProcessed(state.iterations() * (spec.steps + 1));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->ArgsProduct({{0, 1, 2}, {16, 64}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->ArgsProduct({{0, 1, 2}, {16, 64}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
