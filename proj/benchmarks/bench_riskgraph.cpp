#include <benchmark/benchmark.h>

#include "netres/riskgraph.hpp"

using namespace netres;

namespace {

// Layered OR-of-ANDs tree over `width` gates of `fan` leaves each.
void build_instance(int width, int fan, SystemGraph* graph, AttackTree* tree,
                    RiskVector* risk) {
  tree->root = "top";
  AttackTree::Gate top{"top", AttackTree::GateKind::Or, {}};
  int node = 0;
  for (int g = 0; g < width; ++g) {
    AttackTree::Gate gate{"g" + std::to_string(g), AttackTree::GateKind::And, {}};
    for (int c = 0; c < fan; ++c) {
      const std::string id = "n" + std::to_string(node % (width * fan / 2 + 1));
      if (!graph->has_node(id)) {
        graph->nodes.push_back({id, SystemGraph::Role::Component});
        (*risk)[id] = 0.05 + 0.9 * (node % 7) / 7.0;
      }
      const std::string leaf = "l" + std::to_string(node++);
      tree->leaves.push_back({leaf, id});
      gate.children.push_back(leaf);
    }
    tree->gates.push_back(gate);
    top.children.push_back(gate.id);
  }
  tree->gates.insert(tree->gates.begin(), top);
}

}  // namespace

static void BM_Mocus(benchmark::State& state) {
  SystemGraph graph;
  AttackTree tree;
  RiskVector risk;
  build_instance(static_cast<int>(state.range(0)), 3, &graph, &tree, &risk);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mocus_cut_sets(tree, graph));
  }
}
BENCHMARK(BM_Mocus)->Arg(4)->Arg(8)->Arg(16);

static void BM_ImportanceMeasures(benchmark::State& state) {
  SystemGraph graph;
  AttackTree tree;
  RiskVector risk;
  build_instance(8, 3, &graph, &tree, &risk);
  auto cuts = mocus_cut_sets(tree, graph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(importance_measures(cuts, risk));
  }
}
BENCHMARK(BM_ImportanceMeasures);

static void BM_ExactRisk(benchmark::State& state) {
  SystemGraph graph;
  AttackTree tree;
  RiskVector risk;
  build_instance(6, 3, &graph, &tree, &risk);
  auto cuts = mocus_cut_sets(tree, graph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_risk(cuts, risk));
  }
}
BENCHMARK(BM_ExactRisk);
