#include <benchmark/benchmark.h>

#include <cmath>

#include "netres/games.hpp"
#include "netres/matrix_game.hpp"

using namespace netres;

static void BM_MatrixGame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<double>> payoff(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      payoff[i][j] = std::sin(1.3 * i + 0.7 * j) + 0.1 * i - 0.2 * j;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_matrix_game(payoff));
  }
}
BENCHMARK(BM_MatrixGame)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_ShapleySliceMigration(benchmark::State& state) {
  SliceMigrationParams p;
  p.nodes = static_cast<int>(state.range(0));
  p.queue_levels = static_cast<int>(state.range(1));
  p.discount = 0.9;
  auto game = build_slice_migration_game(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shapley_value_iteration(game, 1e-8, 10000));
  }
  state.SetLabel(std::to_string(game.num_states()) + " states");
}
BENCHMARK(BM_ShapleySliceMigration)->Args({2, 4})->Args({3, 5})->Args({4, 6});

static void BM_WorstCaseAttacker(benchmark::State& state) {
  SliceMigrationParams p;
  p.nodes = 3;
  p.queue_levels = 5;
  p.discount = 0.9;
  auto game = build_slice_migration_game(p);
  auto eq = shapley_value_iteration(game, 1e-8, 10000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        worst_case_attacker(game, eq.defender_policy, 1e-10, 100000));
  }
}
BENCHMARK(BM_WorstCaseAttacker);

BENCHMARK_MAIN();
