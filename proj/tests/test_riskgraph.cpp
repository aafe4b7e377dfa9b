#include <doctest.h>

#include "netres/errors.hpp"
#include "netres/riskgraph.hpp"
#include "netres/rng.hpp"
#include "oracles.hpp"

using namespace netres;

namespace {

SystemGraph graph_with(const std::vector<std::string>& ids) {
  SystemGraph g;
  for (const auto& id : ids) g.nodes.push_back({id, SystemGraph::Role::Component});
  return g;
}

AttackTree or_a_and_bc() {
  AttackTree t;
  t.root = "top";
  t.gates = {{"top", AttackTree::GateKind::Or, {"la", "g1"}},
             {"g1", AttackTree::GateKind::And, {"lb", "lc"}}};
  t.leaves = {{"la", "A"}, {"lb", "B"}, {"lc", "C"}};
  return t;
}

}  // namespace

TEST_CASE("mocus: OR over a leaf and an AND pair") {
  auto graph = graph_with({"A", "B", "C"});
  auto cuts = mocus_cut_sets(or_a_and_bc(), graph);
  REQUIRE(cuts.sets.size() == 2);
  CHECK(cuts.sets[0] == std::vector<std::string>{"A"});
  CHECK(cuts.sets[1] == (std::vector<std::string>{"B", "C"}));
  CHECK_NOTHROW(cuts.validate());
}

TEST_CASE("mocus: single conjunction") {
  auto graph = graph_with({"A", "B"});
  AttackTree t;
  t.root = "top";
  t.gates = {{"top", AttackTree::GateKind::And, {"la", "lb"}}};
  t.leaves = {{"la", "A"}, {"lb", "B"}};
  auto cuts = mocus_cut_sets(t, graph);
  REQUIRE(cuts.sets.size() == 1);
  CHECK(cuts.sets[0] == (std::vector<std::string>{"A", "B"}));
}

TEST_CASE("mocus: supersets absorbed") {
  auto graph = graph_with({"A", "B", "C"});
  AttackTree t;
  t.root = "top";
  t.gates = {{"top", AttackTree::GateKind::Or, {"g1", "g2"}},
             {"g1", AttackTree::GateKind::And, {"la", "lb"}},
             {"g2", AttackTree::GateKind::And, {"la2", "lb2", "lc"}}};
  t.leaves = {{"la", "A"}, {"lb", "B"}, {"la2", "A"}, {"lb2", "B"}, {"lc", "C"}};
  auto cuts = mocus_cut_sets(t, graph);
  REQUIRE(cuts.sets.size() == 1);
  CHECK(cuts.sets[0] == (std::vector<std::string>{"A", "B"}));
  CHECK(cuts.sets == oracles::brute_force_min_cuts(t));
}

TEST_CASE("mocus: equals brute force on random trees") {
  RngStream rng(81, 0);
  for (int rep = 0; rep < 10; ++rep) {
    // Random two-level tree over up to 8 nodes.
    const int n_nodes = 3 + static_cast<int>(rng.below(6));
    std::vector<std::string> ids;
    for (int i = 0; i < n_nodes; ++i) ids.push_back("N" + std::to_string(i));
    auto graph = graph_with(ids);

    AttackTree t;
    t.root = "top";
    AttackTree::Gate top{"top",
                         rng.bernoulli(0.5) ? AttackTree::GateKind::And
                                            : AttackTree::GateKind::Or,
                         {}};
    const int n_gates = 2 + static_cast<int>(rng.below(3));
    int leaf_counter = 0;
    for (int g = 0; g < n_gates; ++g) {
      AttackTree::Gate gate{"g" + std::to_string(g),
                            rng.bernoulli(0.5) ? AttackTree::GateKind::And
                                               : AttackTree::GateKind::Or,
                            {}};
      const int n_children = 1 + static_cast<int>(rng.below(3));
      for (int c = 0; c < n_children; ++c) {
        std::string leaf_id = "l" + std::to_string(leaf_counter++);
        t.leaves.push_back({leaf_id, ids[rng.below(n_nodes)]});
        gate.children.push_back(leaf_id);
      }
      t.gates.push_back(gate);
      top.children.push_back(gate.id);
    }
    t.gates.insert(t.gates.begin(), top);

    auto cuts = mocus_cut_sets(t, graph);
    CHECK(cuts.sets == oracles::brute_force_min_cuts(t));
  }
}

TEST_CASE("attack tree validation: cycles, unknown children, empty gates") {
  auto graph = graph_with({"A"});
  AttackTree t;
  t.root = "g0";
  t.gates = {{"g0", AttackTree::GateKind::Or, {"g1"}},
             {"g1", AttackTree::GateKind::Or, {"g0"}}};
  CHECK_THROWS_AS(t.validate(graph), ValidationError);

  AttackTree t2;
  t2.root = "g0";
  t2.gates = {{"g0", AttackTree::GateKind::Or, {"nope"}}};
  CHECK_THROWS_AS(t2.validate(graph), ValidationError);

  AttackTree t3;
  t3.root = "g0";
  t3.gates = {{"g0", AttackTree::GateKind::And, {}}};
  CHECK_THROWS_AS(t3.validate(graph), ValidationError);

  AttackTree t4;
  t4.root = "l0";
  t4.leaves = {{"l0", "missing"}};
  CHECK_THROWS_AS(t4.validate(graph), ValidationError);
}

TEST_CASE("systemic_risk: disjoint, certain, and null cases") {
  CutSetFamily cuts;
  cuts.sets = {{"1"}, {"2"}};
  RiskVector r{{"1", 0.5}, {"2", 0.5}};
  CHECK(systemic_risk(cuts, r) == doctest::Approx(0.75).epsilon(1e-12));

  RiskVector certain{{"1", 1.0}, {"2", 0.0}};
  CHECK(systemic_risk(cuts, certain) == doctest::Approx(1.0));

  RiskVector zero{{"1", 0.0}, {"2", 0.0}};
  CHECK(systemic_risk(cuts, zero) == doctest::Approx(0.0));

  RiskVector missing{{"1", 0.5}};
  CHECK_THROWS_AS(systemic_risk(cuts, missing), std::domain_error);
}

TEST_CASE("exact_risk: matches the formula on disjoint cut sets") {
  CutSetFamily cuts;
  cuts.sets = {{"1"}, {"2"}};
  RiskVector r{{"1", 0.5}, {"2", 0.5}};
  CHECK(exact_risk(cuts, r) == doctest::Approx(systemic_risk(cuts, r)).epsilon(1e-12));

  CutSetFamily pair;
  pair.sets = {{"1", "2"}};
  CHECK(exact_risk(pair, r) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("exact_risk: documents the shared-node approximation gap") {
  CutSetFamily cuts;
  cuts.sets = {{"1", "2"}, {"1", "3"}};
  RiskVector r{{"1", 0.5}, {"2", 0.5}, {"3", 0.5}};
  CHECK(exact_risk(cuts, r) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(systemic_risk(cuts, r) == doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("exact_risk: node capacity guard") {
  CutSetFamily cuts;
  std::vector<std::string> big;
  for (int i = 0; i < 23; ++i) big.push_back("n" + std::to_string(i));
  cuts.sets = {big};
  RiskVector r;
  for (const auto& id : big) r[id] = 0.5;
  CHECK_THROWS_AS(exact_risk(cuts, r), std::domain_error);
}

TEST_CASE("importance_measures: worked series system") {
  CutSetFamily cuts;
  cuts.sets = {{"1"}, {"2"}};
  RiskVector r{{"1", 0.3}, {"2", 0.5}};
  auto rows = importance_measures(cuts, r);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].node == "1");
  CHECK(rows[0].bi == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows[0].ip == doctest::Approx(0.65 - 0.5).epsilon(1e-12));
  CHECK(rows[0].ri == doctest::Approx(0.3 * 0.5).epsilon(1e-12));
}

TEST_CASE("importance_measures: structurally irrelevant and riskless nodes") {
  CutSetFamily cuts;
  cuts.sets = {{"1"}};
  RiskVector r{{"1", 0.4}, {"ghost", 0.9}};
  auto rows = importance_measures(cuts, r);
  for (const auto& row : rows) {
    if (row.node == "ghost") {
      CHECK(row.ip == doctest::Approx(0.0));
      CHECK(row.bi == doctest::Approx(0.0));
      CHECK(row.ri == doctest::Approx(0.0));
    }
  }

  RiskVector r2{{"1", 0.0}, {"ghost", 0.9}};
  auto rows2 = importance_measures(cuts, r2);
  CHECK(rows2[0].ri == doctest::Approx(0.0));
  CHECK(rows2[0].bi == doctest::Approx(1.0));
}

TEST_CASE("importance_measures: derivative diagnostic differs under shared nodes") {
  CutSetFamily cuts;
  cuts.sets = {{"1", "2"}, {"1", "3"}};
  RiskVector r{{"1", 0.8}, {"2", 0.5}, {"3", 0.5}};
  auto rows = importance_measures(cuts, r);
  // Node 1 appears in both cut sets: the product formula is quadratic in
  // r_1, so the two-point secant (0.75, independent of r_1) and the local
  // derivative (1 - r_1/2 = 0.6) disagree away from r_1 = 0.5.
  CHECK(rows[0].node == "1");
  CHECK(rows[0].bi == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rows[0].derivative == doctest::Approx(0.6).epsilon(1e-12));
  // Node 2 appears once: both notions coincide.
  CHECK(rows[1].bi == doctest::Approx(rows[1].derivative).epsilon(1e-12));
}

TEST_CASE("riskgraph invariants: monotone risk, nonnegative BI, IP <= BI") {
  RngStream rng(91, 0);
  for (int rep = 0; rep < 20; ++rep) {
    CutSetFamily cuts;
    const int n_nodes = 4;
    for (int w = 0; w < 3; ++w) {
      std::vector<std::string> cut;
      for (int v = 0; v < n_nodes; ++v) {
        if (rng.bernoulli(0.5)) cut.push_back("n" + std::to_string(v));
      }
      if (!cut.empty()) cuts.sets.push_back(cut);
    }
    if (cuts.sets.empty()) continue;
    cuts.canonicalize();
    // Keep only an antichain.
    CutSetFamily minimal;
    for (const auto& cand : cuts.sets) {
      bool absorbed = false;
      for (const auto& kept : minimal.sets) {
        if (std::includes(cand.begin(), cand.end(), kept.begin(), kept.end())) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) minimal.sets.push_back(cand);
    }

    RiskVector r;
    for (int v = 0; v < n_nodes; ++v) {
      r["n" + std::to_string(v)] = rng.uniform(0.0, 1.0);
    }
    const double base = systemic_risk(minimal, r);
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);

    RiskVector bumped = r;
    auto it = bumped.begin();
    std::advance(it, rng.below(bumped.size()));
    it->second = std::min(1.0, it->second + 0.2);
    CHECK(systemic_risk(minimal, bumped) >= base - 1e-12);

    for (const auto& row : importance_measures(minimal, r)) {
      CHECK(row.bi >= -1e-12);
      CHECK(row.ip <= row.bi + 1e-12);
    }
  }
}

TEST_CASE("rank_mitigations: ordering, tie-break, saturation") {
  CutSetFamily cuts;
  cuts.sets = {{"1"}, {"2"}};
  RiskVector r{{"1", 0.9}, {"2", 0.1}};
  auto ranked = rank_mitigations(cuts, r, 2);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].node == "1");
  CHECK(ranked[0].ri == doctest::Approx(0.9 * 0.9).epsilon(1e-12));
  CHECK(ranked[1].node == "2");
  CHECK(ranked[1].ri == doctest::Approx(0.1 * 0.1).epsilon(1e-12));

  RiskVector tie{{"1", 0.5}, {"2", 0.5}};
  auto tied = rank_mitigations(cuts, tie, 5);
  REQUIRE(tied.size() == 2);  // top_k larger than node count
  CHECK(tied[0].node == "1");
  CHECK(tied[1].node == "2");

  CHECK_THROWS_AS(rank_mitigations(cuts, tie, 0), std::domain_error);
}
