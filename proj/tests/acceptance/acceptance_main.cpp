// Acceptance suite: one check per shipped guarantee, one pass/fail line per
// criterion. Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "netres/errors.hpp"
#include "netres/fallback.hpp"
#include "netres/games.hpp"
#include "netres/matrix_game.hpp"
#include "netres/metrics.hpp"
#include "netres/models.hpp"
#include "netres/mtd.hpp"
#include "netres/nettheory.hpp"
#include "netres/qlearn.hpp"
#include "netres/report.hpp"
#include "netres/riskgraph.hpp"
#include "netres/rng.hpp"
#include "netres/scenario.hpp"
#include "netres/stats.hpp"
#include "netres/twin.hpp"
#include "oracles.hpp"

namespace {

using namespace netres;

struct Failure {
  std::string reason;
};

void require(bool cond, const std::string& reason) {
  if (!cond) throw Failure{reason};
}

Mat mat1(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

Vec vec1(double v) {
  Vec x(1);
  x[0] = v;
  return x;
}

// ---------------------------------------------------------------------------
// Criterion 1: fallback-switching fidelity against the brute-force oracle.
// ---------------------------------------------------------------------------

LQFallbackSpec random_scalar_spec(RngStream& rng) {
  LQFallbackSpec spec;
  spec.A = {mat1(rng.uniform(0.8, 2.5)), mat1(rng.uniform(0.1, 0.9))};
  spec.Q = {mat1(rng.uniform(0.2, 2.0)), mat1(rng.uniform(0.2, 2.0))};
  spec.P = {mat1(rng.uniform(0.0, 2.0)), mat1(rng.uniform(0.0, 2.0))};
  spec.B = mat1(1.0);
  spec.R = mat1(rng.uniform(0.3, 2.0));
  const double s0 = rng.uniform(0.0, 0.3);
  spec.s = {s0, s0 + rng.uniform(0.05, 0.8)};
  spec.lambda = rng.uniform(0.1, 1.5);
  return spec;
}

LQFallbackSpec random_planar_spec(RngStream& rng) {
  const int n = 2;
  auto rand_mat = [&](double lo, double hi) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
    }
    return m;
  };
  auto psd = [&](double scale) {
    Mat l = rand_mat(-1.0, 1.0);
    return Mat(scale * (l.transpose() * l) + 0.05 * Mat::Identity(n, n));
  };
  LQFallbackSpec spec;
  spec.A = {rand_mat(-1.2, 1.2), 0.4 * rand_mat(-1.0, 1.0)};
  spec.Q = {psd(1.0), psd(0.6)};
  spec.P = {psd(0.8), psd(0.8)};
  spec.B = Mat(n, 1);
  spec.B << rng.uniform(0.5, 1.5), rng.uniform(-1.0, 1.0);
  spec.R = mat1(rng.uniform(0.3, 2.0));
  const double s0 = rng.uniform(0.0, 0.3);
  spec.s = {s0, s0 + rng.uniform(0.05, 0.8)};
  spec.lambda = rng.uniform(0.1, 1.5);
  return spec;
}

double implementation_cost(const LQFallbackSpec& spec, const FallbackDecision& d,
                           const Eigen::VectorXd& x, int mode) {
  const Mat& gamma = mode == 0 ? d.gamma_stay : d.gamma_switch;
  return x.dot(gamma * x) + spec.s[0] + spec.s[mode] +
         (mode == 1 ? spec.lambda : 0.0);
}

void criterion_fallback() {
  RngStream rng(1001, 0);
  int checked = 0;
  const auto t0 = std::chrono::steady_clock::now();

  for (int rep = 0; rep < 30; ++rep) {
    const bool planar = rep >= 20;
    LQFallbackSpec spec = planar ? random_planar_spec(rng) : random_scalar_spec(rng);
    spec.validate();

    Eigen::VectorXd x(spec.state_dim());
    FallbackDecision decision;
    bool clear_margin = false;
    for (int attempt = 0; attempt < 8 && !clear_margin; ++attempt) {
      for (int i = 0; i < x.size(); ++i) x[i] = rng.uniform(-2.5, 2.5);
      decision = fallback_decision(spec, x);
      clear_margin = std::abs(decision.delta_j) > 1e-3;
    }
    require(clear_margin, "could not find a state away from the switch boundary");

    auto oracle = oracles::lq_brute_force(spec, x);
    require(decision.switch_to_safe == oracle.switch_better,
            "verdict mismatch against the brute-force oracle");
    const double j0 = implementation_cost(spec, decision, x, 0);
    const double j1 = implementation_cost(spec, decision, x, 1);
    require(std::abs(j0 - oracle.cost_stay) <= 1e-4,
            "stay-cost disagreement " + std::to_string(j0 - oracle.cost_stay));
    require(std::abs(j1 - oracle.cost_switch) <= 1e-4,
            "switch-cost disagreement " + std::to_string(j1 - oracle.cost_switch));
    ++checked;

    if (!planar) {
      auto threshold = scalar_switch_threshold(spec);
      if (threshold && *threshold > 2e-3 && *threshold < 20.0) {
        auto above = oracles::lq_brute_force(spec, vec1(*threshold + 1e-3));
        auto below = oracles::lq_brute_force(spec, vec1(*threshold - 1e-3));
        require(above.switch_better,
                "oracle stays just above the closed-form threshold");
        require(!below.switch_better,
                "oracle switches just below the closed-form threshold");
      }
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(checked == 30, "expected 30 specs");
  require(elapsed < 10.0,
          "runtime budget exceeded: " + std::to_string(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// Criterion 2: MTD optimality against a numerical simplex minimizer.
// ---------------------------------------------------------------------------

void criterion_mtd() {
  RngStream rng(1002, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(7));
    std::vector<double> f(n), risk(n);
    double z = 0.0;
    for (int c = 0; c < n; ++c) {
      f[c] = rng.uniform(0.02, 1.0);
      z += f[c];
      risk[c] = rng.uniform(0.0, 3.0);
    }
    for (auto& v : f) v /= z;
    const double eps = rng.uniform(0.1, 3.0);

    auto update = mtd_update(f, risk, eps);
    const double impl_obj = mtd_objective(update, f, risk, eps);
    auto pgd = oracles::minimize_simplex_md(f, risk, eps);
    const double pgd_obj = oracles::simplex_objective(pgd, f, risk, eps);
    require(std::abs(impl_obj - pgd_obj) <= 1e-6,
            "objective gap vs numerical minimizer: " +
                std::to_string(impl_obj - pgd_obj));

    std::vector<double> equal(n, 1.25);
    require(mtd_update(f, equal, eps) == f,
            "equal risks must return the prior exactly");

    auto shifted = risk;
    for (auto& v : shifted) v += 11.5;
    auto a = mtd_update(f, risk, eps);
    auto b = mtd_update(f, shifted, eps);
    for (int c = 0; c < n; ++c) {
      require(std::abs(a[c] - b[c]) <= 1e-12, "risk-shift invariance violated");
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 3: Shapley solver battery, contraction, and no-deviation check.
// ---------------------------------------------------------------------------

StochasticGame one_state_game(const std::vector<std::vector<double>>& stage,
                              double discount) {
  StochasticGame g;
  g.discount = discount;
  g.state_labels = {"s0"};
  g.defender_actions = {{}};
  g.attacker_actions = {{}};
  for (std::size_t r = 0; r < stage.size(); ++r) {
    g.defender_actions[0].push_back("r" + std::to_string(r));
  }
  for (std::size_t e = 0; e < stage[0].size(); ++e) {
    g.attacker_actions[0].push_back("e" + std::to_string(e));
  }
  g.payoff = {stage};
  g.kernel.resize(1);
  g.kernel[0].assign(stage.size(),
                     std::vector<std::vector<double>>(stage[0].size(), {1.0}));
  return g;
}

void check_contraction(const EquilibriumSolution& sol, double beta) {
  for (std::size_t k = 1; k < sol.residual_history.size(); ++k) {
    require(sol.residual_history[k] <=
                beta * sol.residual_history[k - 1] + 1e-9,
            "empirical contraction violated at sweep " + std::to_string(k));
  }
}

void criterion_shapley() {
  const auto t0 = std::chrono::steady_clock::now();

  auto pennies = one_state_game({{1, -1}, {-1, 1}}, 0.9);
  auto sol_pennies = shapley_value_iteration(pennies, 1e-11, 50000);
  require(std::abs(sol_pennies.value[0]) <= 1e-9,
          "matching pennies value " + std::to_string(sol_pennies.value[0]));
  check_contraction(sol_pennies, 0.9);

  auto constant = one_state_game({{2.0, 2.0}, {2.0, 2.0}}, 0.9);
  auto sol_constant = shapley_value_iteration(constant, 1e-11, 50000);
  require(std::abs(sol_constant.value[0] - 20.0) <= 1e-7,
          "constant game value should be c/(1-beta)");
  check_contraction(sol_constant, 0.9);

  StochasticGame chain;
  chain.discount = 0.5;
  chain.state_labels = {"s1", "s2"};
  chain.defender_actions = {{"r0"}, {"r0"}};
  chain.attacker_actions = {{"e0"}, {"e0"}};
  chain.payoff = {{{0.0}}, {{1.0}}};
  chain.kernel = {{{{0.0, 1.0}}}, {{{0.0, 1.0}}}};
  auto sol_chain = shapley_value_iteration(chain, 1e-11, 50000);
  require(std::abs(sol_chain.value[1] - 2.0) <= 1e-8, "absorbing state value");
  require(std::abs(sol_chain.value[0] - 1.0) <= 1e-8, "transient state value");
  check_contraction(sol_chain, 0.5);

  // Slice-migration instance J=3, K=5 with the unilateral-deviation check.
  SliceMigrationParams p;
  p.nodes = 3;
  p.queue_levels = 5;
  p.discount = 0.95;
  auto game = build_slice_migration_game(p);
  auto sol = shapley_value_iteration(game, 1e-10, 50000);
  require(sol.converged, "slice-migration solve did not converge");
  check_contraction(sol, p.discount);

  for (int s = 0; s < game.num_states(); ++s) {
    const auto n_r = game.defender_actions[s].size();
    const auto n_e = game.attacker_actions[s].size();
    // Stage matrix at the fixed point.
    std::vector<std::vector<double>> m(n_r, std::vector<double>(n_e, 0.0));
    for (std::size_t r = 0; r < n_r; ++r) {
      for (std::size_t e = 0; e < n_e; ++e) {
        double cont = 0.0;
        for (int sp = 0; sp < game.num_states(); ++sp) {
          cont += game.kernel[s][r][e][sp] * sol.value[sp];
        }
        m[r][e] = game.payoff[s][r][e] + game.discount * cont;
      }
    }
    // Defender deviations: no pure row beats the value against pi_A.
    for (std::size_t r = 0; r < n_r; ++r) {
      double payoff = 0.0;
      for (std::size_t e = 0; e < n_e; ++e) {
        payoff += m[r][e] * sol.attacker_policy[s][e];
      }
      require(payoff <= sol.value[s] + 1e-6,
              "defender improves by deviating at state " + std::to_string(s));
    }
    // Attacker deviations: no pure column pushes the defender below it.
    for (std::size_t e = 0; e < n_e; ++e) {
      double payoff = 0.0;
      for (std::size_t r = 0; r < n_r; ++r) {
        payoff += m[r][e] * sol.defender_policy[s][r];
      }
      require(payoff >= sol.value[s] - 1e-6,
              "attacker improves by deviating at state " + std::to_string(s));
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 30.0,
          "runtime budget exceeded: " + std::to_string(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// Criterion 4: robust worst-case dominance.
// ---------------------------------------------------------------------------

void criterion_robust() {
  SliceMigrationParams p;
  p.nodes = 2;
  p.queue_levels = 4;
  p.discount = 0.9;
  auto game = build_slice_migration_game(p);
  auto eq = shapley_value_iteration(game, 1e-11, 100000);
  require(eq.converged, "equilibrium solve did not converge");

  auto wc_eq = worst_case_attacker(game, eq.defender_policy, 1e-12, 500000);
  for (int s = 0; s < game.num_states(); ++s) {
    require(std::abs(wc_eq.defender_loss[s] + eq.value[s]) <= 1e-6,
            "equilibrium policy loss differs from the game value at state " +
                std::to_string(s));
  }

  RngStream rng(1004, 0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::vector<double>> policy(game.num_states());
    for (int s = 0; s < game.num_states(); ++s) {
      const auto n_r = game.defender_actions[s].size();
      policy[s].assign(n_r, 0.0);
      double z = 0.0;
      for (auto& v : policy[s]) z += (v = rng.uniform(0.01, 1.0));
      for (auto& v : policy[s]) v /= z;
    }
    auto wc = worst_case_attacker(game, policy, 1e-12, 500000);
    for (int s = 0; s < game.num_states(); ++s) {
      require(wc.defender_loss[s] >= -eq.value[s] - 1e-6,
              "random policy beats the equilibrium floor at state " +
                  std::to_string(s));
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 5: metrics exactness.
// ---------------------------------------------------------------------------

void criterion_metrics() {
  const std::vector<double> q{100, 100, 50, 75, 100};
  require(resilience_loss(q, 100.0, {2, 4}) == 0.75, "L must equal 0.75 exactly");

  MetricsConfig cfg;
  cfg.delta = 0.8;
  auto tm = temporal_metrics(q, 100.0, {{2, 3, 4}}, cfg);
  require(tm.per_event[0].downtime == 2, "downtime must be 2");
  require(tm.mttd == 1.0, "MTTD must be 1");
  require(tm.mttr == 1.0, "MTTR must be 1");
  require(tm.max_drop == 50.0, "M must be 50");
  require(tm.residual == 0.0, "D must be 0");

  RngStream rng(1005, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 8 + static_cast<int>(rng.below(10));
    std::vector<double> series(n);
    for (auto& v : series) v = rng.uniform(0.0, 100.0);
    Window w{1, n - 2};
    std::vector<double> shortfalls;
    for (int t = w.first; t <= w.last; ++t) shortfalls.push_back(1.0 - series[t] / 100.0);
    std::vector<double> unit(shortfalls.size(), 1.0);
    const double c_res = aggregate_metrics({}, {}, shortfalls, unit).c_resilience;
    require(std::abs(c_res - resilience_loss(series, 100.0, w)) <= 1e-12,
            "unit-cost loss must equal L to 1e-12");

    // Bounded metrics stay in [0, 1].
    std::vector<SliceSeries> slices{{series, 100.0},
                                    {std::vector<double>(n, 90.0), 100.0}};
    std::vector<double> latency(n);
    for (auto& v : latency) v = rng.uniform(0.0, 20.0);
    MetricsConfig sc;
    sc.l_max = 10.0;
    sc.q_sla = 40.0;
    sc.q_avail = 60.0;
    auto sm = service_metrics(slices, latency, sc, 0, w);
    for (double v : {sm.sii, *sm.latency_compliance, sm.sla_violation_rate,
                     sm.availability}) {
      require(v >= 0.0 && v <= 1.0, "bounded metric escaped [0, 1]");
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 6: PRA / CVaR.
// ---------------------------------------------------------------------------

const char* kPraScenarioText = R"({
  "kind": "pra",
  "seed": 55,
  "pra": {
    "twin_model": {"type": "scalar_linear", "a": 0.8, "b_xi": 1,
                    "q_max": 10, "measure": "negated_abs"},
    "policy": {"type": "zero"},
    "natural": {"type": "gaussian", "sigma": 0.5},
    "samples": 16,
    "alpha": 0.6,
    "horizon": 8,
    "window": [1, 8],
    "q_min": 5,
    "scenarios": [
      {"name": "a", "probability": 0.5, "initial": {"x": [1]}},
      {"name": "b", "probability": 0.5, "initial": {"x": [4]},
       "attacker": {"type": "constant", "w": [0.2]}}
    ]
  }
})";

void criterion_pra() {
  ScenarioStats a;
  a.name = "a";
  a.probability = 0.5;
  a.samples = 2;
  a.loss_samples = {1.0, 2.0};
  a.mean_loss = 1.5;
  ScenarioStats b = a;
  b.name = "b";
  b.loss_samples = {3.0, 4.0};
  b.mean_loss = 3.5;
  auto risk = aggregate_risk({a, b}, 0.5);
  require(risk.cvar == 3.5, "pooled CVaR at alpha=0.5 must be exactly 3.5");

  RngStream rng(1006, 0);
  for (int rep = 0; rep < 50; ++rep) {
    ScenarioStats s;
    s.probability = 1.0;
    s.samples = 10 + static_cast<int>(rng.below(15));
    for (int i = 0; i < s.samples; ++i) {
      s.loss_samples.push_back(rng.uniform(0.0, 10.0));
    }
    s.mean_loss = mean(s.loss_samples);
    double prev = -1e300;
    for (int g = 0; g < 20; ++g) {
      const double alpha = 0.999 * g / 19.0;
      const double value = aggregate_risk({s}, alpha).cvar;
      require(value >= prev - 1e-12, "CVaR must be nondecreasing in alpha");
      // Cross-check against the eta-scan form of the minimization.
      std::vector<double> weights(s.loss_samples.size(),
                                  1.0 / s.loss_samples.size());
      const double scan = oracles::cvar_eta_scan(s.loss_samples, weights, alpha);
      require(std::abs(value - scan) <= 1e-9, "CVaR disagrees with the eta scan");
      prev = value;
    }
  }

  // E[L] linear in the two-scenario mixture weight.
  ScenarioStats lo, hi;
  lo.samples = hi.samples = 1;
  lo.loss_samples = {2.0};
  lo.mean_loss = 2.0;
  hi.loss_samples = {7.0};
  hi.mean_loss = 7.0;
  for (double w : {0.0, 0.1, 0.35, 0.8, 1.0}) {
    lo.probability = 1.0 - w;
    hi.probability = w;
    const double expected = 2.0 + 5.0 * w;
    require(std::abs(aggregate_risk({lo, hi}, 0.0).expected_loss - expected) <= 1e-12,
            "E[L] must be linear in the scenario mixture");
  }

  // End-to-end determinism: identical bytes for identical (file, seed).
  auto cfg = parse_scenario(kPraScenarioText, "<acceptance>");
  namespace fs = std::filesystem;
  const auto dir_a = fs::temp_directory_path() / "netres_acc_pra_a";
  const auto dir_b = fs::temp_directory_path() / "netres_acc_pra_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  emit_report(run_experiment(cfg), dir_a.string(), {"csv"});
  emit_report(run_experiment(cfg), dir_b.string(), {"csv"});
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    std::ifstream in_a(entry.path(), std::ios::binary);
    std::ifstream in_b(dir_b / entry.path().filename(), std::ios::binary);
    std::stringstream sa, sb;
    sa << in_a.rdbuf();
    sb << in_b.rdbuf();
    require(sa.str() == sb.str(),
            "per-seed reports differ: " + entry.path().filename().string());
  }
}

// ---------------------------------------------------------------------------
// Criterion 7: riskgraph oracles.
// ---------------------------------------------------------------------------

void criterion_riskgraph() {
  RngStream rng(1007, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n_nodes = 3 + static_cast<int>(rng.below(7));
    std::vector<std::string> ids;
    SystemGraph graph;
    for (int i = 0; i < n_nodes; ++i) {
      ids.push_back("N" + std::to_string(i));
      graph.nodes.push_back({ids.back(), SystemGraph::Role::Component});
    }

    AttackTree t;
    t.root = "top";
    AttackTree::Gate top{"top",
                         rng.bernoulli(0.5) ? AttackTree::GateKind::And
                                            : AttackTree::GateKind::Or,
                         {}};
    int leaves = 0;
    const int n_gates = 2 + static_cast<int>(rng.below(3));
    for (int g = 0; g < n_gates && leaves < 12; ++g) {
      AttackTree::Gate gate{"g" + std::to_string(g),
                            rng.bernoulli(0.5) ? AttackTree::GateKind::And
                                               : AttackTree::GateKind::Or,
                            {}};
      const int n_children =
          1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                  std::min(4, 12 - leaves))));
      for (int c = 0; c < n_children; ++c) {
        const std::string leaf_id = "l" + std::to_string(leaves++);
        t.leaves.push_back({leaf_id, ids[rng.below(n_nodes)]});
        gate.children.push_back(leaf_id);
      }
      t.gates.push_back(gate);
      top.children.push_back(gate.id);
    }
    t.gates.insert(t.gates.begin(), top);

    auto cuts = mocus_cut_sets(t, graph);
    require(cuts.sets == oracles::brute_force_min_cuts(t),
            "MOCUS disagrees with brute-force enumeration");
  }

  // Disjoint families: exact equals the product formula to 1e-12.
  for (int rep = 0; rep < 20; ++rep) {
    CutSetFamily cuts;
    RiskVector r;
    int node = 0;
    const int n_cuts = 1 + static_cast<int>(rng.below(4));
    for (int w = 0; w < n_cuts; ++w) {
      std::vector<std::string> cut;
      const int size = 1 + static_cast<int>(rng.below(3));
      for (int v = 0; v < size; ++v) {
        const std::string id = "d" + std::to_string(node++);
        r[id] = rng.uniform(0.0, 1.0);
        cut.push_back(id);
      }
      cuts.sets.push_back(cut);
    }
    require(std::abs(exact_risk(cuts, r) - systemic_risk(cuts, r)) <= 1e-12,
            "disjoint families must match exactly");
  }

  CutSetFamily shared;
  shared.sets = {{"1", "2"}, {"1", "3"}};
  RiskVector half{{"1", 0.5}, {"2", 0.5}, {"3", 0.5}};
  require(exact_risk(shared, half) == 0.375, "shared-node exact risk");
  require(systemic_risk(shared, half) == 0.4375, "shared-node formula risk");

  CutSetFamily series;
  series.sets = {{"1"}, {"2"}};
  RiskVector sr{{"1", 0.3}, {"2", 0.5}};
  auto rows = importance_measures(series, sr);
  require(std::abs(rows[0].bi - 0.5) <= 1e-12, "series BI_1");
  require(std::abs(rows[0].ip - 0.15) <= 1e-12, "series IP_1");
  require(std::abs(rows[0].ri - 0.15) <= 1e-12, "series RI_1");
  require(std::abs(rows[1].bi - 0.7) <= 1e-12, "series BI_2");
}

// ---------------------------------------------------------------------------
// Criterion 8: network theory.
// ---------------------------------------------------------------------------

SpatialNetwork complete_graph(int n) {
  SpatialNetwork net;
  net.side = 1.0;
  net.points.assign(n, {0.0, 0.0});
  net.neighbors.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) net.neighbors[i].push_back(j);
    }
  }
  return net;
}

void criterion_network() {
  const auto t0 = std::chrono::steady_clock::now();

  // Mean degree at >= 2000 expected nodes.
  auto net = sample_rgg(1.0, 50.0, 1.0, 8080);
  require(net.num_nodes() >= 2000, "expected at least 2000 nodes");
  auto stats = degree_stats(net);
  const double se = std::sqrt(stats.theoretical_mean / net.num_nodes());
  require(std::abs(stats.empirical_mean - stats.theoretical_mean) <= 3.0 * se,
          "empirical mean degree outside 3 standard errors");

  // Poisson goodness of fit across ten seeds.
  int accepted = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto run = sample_rgg(1.0, 50.0, 1.0, seed);
    if (degree_stats(run).p_value > 0.01) ++accepted;
  }
  require(accepted >= 9, "chi-square rejected in more than one of ten runs (" +
                             std::to_string(accepted) + "/10 accepted)");

  // SIS on K10.
  auto k10 = complete_graph(10);
  std::vector<double> init(10, 0.1);
  EpidemicModel sub{0.05, 1.0, 0.1};
  require(sis_simulate(k10, sub, init, 500).infected_fraction.back() < 1e-3,
          "subcritical SIS must die out on K10");
  EpidemicModel super{0.5, 1.0, 0.1};
  require(sis_simulate(k10, super, init, 500).infected_fraction.back() > 0.01,
          "supercritical SIS must settle endemic on K10");

  for (int n : {4, 10, 40}) {
    auto kn = complete_graph(n);
    auto ind = stability_indicators(kn, 0.05, 1.0);
    require(std::abs(ind.spectral_radius - (n - 1.0)) <= 1e-6,
            "rho(K_n) must equal n-1");
  }

  SpatialNetwork split;
  split.side = 1.0;
  split.points.assign(4, {0.0, 0.0});
  split.neighbors = {{1}, {0}, {3}, {2}};
  auto ind = stability_indicators(split, 0.1, 1.0);
  require(ind.algebraic_connectivity == 0.0,
          "disconnected graphs must report lambda2 exactly 0");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 60.0,
          "runtime budget exceeded: " + std::to_string(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// Criterion 9: Q-learning.
// ---------------------------------------------------------------------------

void criterion_qlearning() {
  TabularMDP single;
  single.discount = 0.5;
  single.reward = {{1.0}};
  single.kernel = {{{1.0}}};
  QLearningParams params;
  params.episodes = 80;
  params.steps_per_episode = 200;
  params.epsilon = 0.0;
  params.rate_c = 25.0;
  params.seed = 7;
  auto table = q_learning(single, params);
  require(std::abs(table.q[0][0] - 2.0) <= 1e-3,
          "single-state Q must reach 1/(1-beta)");

  TabularMDP chain;
  chain.discount = 0.8;
  chain.reward = {{0.0, 0.2}, {1.0, 0.0}};
  chain.kernel = {{{1.0, 0.0}, {0.0, 1.0}}, {{0.0, 1.0}, {1.0, 0.0}}};
  QLearningParams cp;
  cp.episodes = 400;
  cp.steps_per_episode = 60;
  cp.epsilon = 0.25;
  cp.rate_c = 40.0;
  cp.seed = 21;
  auto learned = q_learning(chain, cp);
  auto vi = value_iteration(chain);
  require(learned.greedy == vi.policy,
          "greedy policy must match value iteration on the chain");
}

// ---------------------------------------------------------------------------
// Criterion 10: CLI end-to-end over the bundled scenarios.
// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli() {
#if !defined(NETRES_CLI_PATH) || !defined(NETRES_SCENARIO_DIR)
  throw Failure{"CLI path or scenario directory not configured"};
#else
  namespace fs = std::filesystem;
  const std::string cli = NETRES_CLI_PATH;
  const fs::path scenario_dir = NETRES_SCENARIO_DIR;
  const fs::path work = fs::temp_directory_path() / "netres_acc_cli";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::string>> bundled{
      {"rollout", "rollout_queue_flood.json"},
      {"metrics", "metrics_worked_example.json"},
      {"fallback", "fallback_scalar.json"},
      {"mtd", "mtd_surface.json"},
      {"mpc", "mpc_queue.json"},
      {"game", "game_slice_migration.json"},
      {"pra", "pra_twin.json"},
      {"strategic", "strategic_repair.json"},
      {"riskgraph", "riskgraph_supply_chain.json"},
      {"net", "net_rgg.json"},
  };

  auto shell = [&](const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };

  for (const auto& [kind, file] : bundled) {
    const fs::path scen = scenario_dir / file;
    require(fs::exists(scen), "missing bundled scenario " + file);
    const std::string log = (work / (kind + ".log")).string();

    require(shell(cli + " validate " + scen.string() + " >" + log + " 2>&1") == 0,
            file + " failed validation");

    const fs::path out_a = work / (kind + "_a");
    const fs::path out_b = work / (kind + "_b");
    require(shell(cli + " " + kind + " " + scen.string() + " --out " +
                  out_a.string() + " >" + log + " 2>&1") == 0,
            file + " failed to run");
    require(shell(cli + " " + kind + " " + scen.string() + " --out " +
                  out_b.string() + " >" + log + " 2>&1") == 0,
            file + " failed to rerun");

    bool any_csv = false;
    for (const auto& entry : fs::directory_iterator(out_a)) {
      if (entry.path().extension() == ".csv") {
        any_csv = true;
        const std::string head = slurp(entry.path()).substr(0, 200);
        require(head.find(',') != std::string::npos,
                entry.path().filename().string() + " lacks a CSV header");
        require(slurp(entry.path()) == slurp(out_b / entry.path().filename()),
                kind + ": rerun changed " + entry.path().filename().string());
      }
    }
    require(any_csv, kind + " emitted no CSV tables");
    require(fs::exists(out_a / "report.json"), kind + " emitted no JSON report");
  }

  // Invalid files produce the complete problem list and exit code 1.
  const fs::path invalid = work / "invalid.json";
  {
    std::ofstream out(invalid);
    out << R"({
      "kind": "pra",
      "pra": {
        "twin_model": {"type": "scalar_linear", "q_max": -1},
        "samples": 0,
        "alpha": 2.0,
        "horizon": 0,
        "scenarios": [
          {"name": "a", "probability": 0.5, "initial": {"x": [0]}},
          {"name": "b", "probability": 0.4, "initial": {"x": [0]}}
        ]
      }
    })";
  }
  const std::string err_log = (work / "invalid.log").string();
  require(shell(cli + " validate " + invalid.string() + " >" + err_log +
                " 2>&1") == 1,
          "invalid scenario must exit with code 1");
  const std::string log_text = slurp(err_log);
  for (const char* needle : {"samples", "alpha", "probabilit", "seed"}) {
    require(log_text.find(needle) != std::string::npos,
            std::string("validation output misses the '") + needle +
                "' problem");
  }
#endif
}

struct Criterion {
  int number;
  std::string name;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "fallback-switching fidelity vs brute-force oracle", criterion_fallback},
      {2, "MTD update optimality vs simplex minimizer", criterion_mtd},
      {3, "Shapley solver battery, contraction, no-deviation", criterion_shapley},
      {4, "robust worst-case dominance", criterion_robust},
      {5, "metrics exactness on the worked trajectory", criterion_metrics},
      {6, "PRA aggregation and CVaR properties", criterion_pra},
      {7, "riskgraph oracles (MOCUS, exact risk, importance)", criterion_riskgraph},
      {8, "network theory (degree law, SIS, spectra)", criterion_network},
      {9, "tabular Q-learning convergence", criterion_qlearning},
      {10, "CLI end-to-end over bundled scenarios", criterion_cli},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      criterion.run();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.reason;
      ++failures;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
      ++failures;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << "[" << verdict << "] criterion " << criterion.number << ": "
              << criterion.name << " (" << elapsed << " s)";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 acceptance criteria passed\n";
  return 0;
}
