// OpenMP kernels against their serial reference variants.

#include <benchmark/benchmark.h>

#include <vector>

#include "prony/curve_analysis.hpp"
#include "prony/prony_solver.hpp"

using namespace prony;

namespace {

const MomentVector kMu3{{1.0, 0.3, 0.8, -0.2, 1.1}};

std::vector<double> grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = -20.0 + 40.0 * i / (n - 1);
  return g;
}

void BM_SampleCurve(benchmark::State& state) {
  const auto g = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_curve(kMu3, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleCurveSerial(benchmark::State& state) {
  const auto g = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_curve_serial(kMu3, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

NoiseConfig config(int trials) {
  NoiseConfig c;
  c.trials = trials;
  return c;
}

void BM_Amplification(benchmark::State& state) {
  const NoiseConfig c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(amplification_experiment(c));
}

void BM_AmplificationSerial(benchmark::State& state) {
  const NoiseConfig c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(amplification_experiment_serial(c));
}

}  // namespace

BENCHMARK(BM_SampleCurve)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleCurveSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Amplification)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AmplificationSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
