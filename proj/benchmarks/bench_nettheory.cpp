#include <benchmark/benchmark.h>

#include "netres/nettheory.hpp"

using namespace netres;

static void BM_SampleRgg(benchmark::State& state) {
  const double side = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_rgg(1.0, side, 1.0, seed++));
  }
  state.SetLabel("~" + std::to_string(static_cast<int>(side * side)) + " nodes");
}
BENCHMARK(BM_SampleRgg)->Arg(20)->Arg(50)->Arg(100);

static void BM_LargestComponent(benchmark::State& state) {
  auto net = sample_rgg(1.0, static_cast<double>(state.range(0)), 1.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_component_fraction(net));
  }
}
BENCHMARK(BM_LargestComponent)->Arg(50)->Arg(100);

static void BM_SisStep(benchmark::State& state) {
  auto net = sample_rgg(1.5, 40.0, 1.0, 11);
  EpidemicModel m;
  m.beta = 0.05;
  m.mu = 1.0;
  m.dt = 0.05;
  std::vector<double> init(net.num_nodes(), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sis_simulate(net, m, init, 100));
  }
}
BENCHMARK(BM_SisStep);

static void BM_SpectralRadius(benchmark::State& state) {
  auto net = sample_rgg(1.0, static_cast<double>(state.range(0)), 1.2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability_indicators(net, 0.05, 1.0));
  }
}
BENCHMARK(BM_SpectralRadius)->Arg(20)->Arg(40);
