#include "netres/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "netres/errors.hpp"
#include "netres/version.hpp"

namespace netres {

using nlohmann::json;

std::string format_cell(double value) {
  if (value == 0.0) value = 0.0;  // normalize negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

std::string format_bool(bool v) { return v ? "1" : "0"; }

void add_row(ReportTable& t, std::vector<std::string> cells) {
  t.rows.push_back(std::move(cells));
}

ReportTable trajectory_table(const Trajectory& traj) {
  ReportTable t;
  t.name = "trajectory";
  t.header = {"t", "mode", "q"};
  const int dim = traj.records.empty() ? 0 : static_cast<int>(traj.records[0].x.size());
  for (int i = 0; i < dim; ++i) t.header.push_back("x" + std::to_string(i));
  for (const auto& r : traj.records) {
    std::vector<std::string> cells{std::to_string(r.t), traj.mode_labels[r.mode],
                                   format_cell(r.q)};
    for (int i = 0; i < dim; ++i) cells.push_back(format_cell(r.x[i]));
    add_row(t, std::move(cells));
  }
  return t;
}

ReportTable timeseries_table(const Trajectory& traj, double delta) {
  ReportTable t;
  t.name = "timeseries";
  t.header = {"t", "q", "q_max", "delta_threshold"};
  for (const auto& r : traj.records) {
    add_row(t, {std::to_string(r.t), format_cell(r.q), format_cell(traj.q_max),
                format_cell(delta * traj.q_max)});
  }
  return t;
}

void run_rollout_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.rollout;
  Trajectory traj = rollout(b.model, b.defender, b.attacker, b.natural, b.initial,
                            b.horizon, cfg.seed, /*stream_id=*/0);
  report.tables.push_back(trajectory_table(traj));
  report.tables.push_back(timeseries_table(traj, b.delta));
}

void run_metrics_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.metrics;
  std::vector<double> q = b.q;
  double q_max = b.q_max;
  if (b.from_rollout) {
    const auto& r = *b.from_rollout;
    Trajectory traj = rollout(r.model, r.defender, r.attacker, r.natural,
                              r.initial, r.horizon, cfg.seed, 0);
    q = traj.q_series();
    q_max = traj.q_max;
    report.tables.push_back(trajectory_table(traj));
  }

  std::vector<DisruptionEvent> events = b.events;
  if (b.auto_detect_events) events = detect_events(q, q_max, b.cfg);

  ReportTable metrics;
  metrics.name = "metrics";
  metrics.header = {"metric", "value"};

  const double loss = resilience_loss(q, q_max, b.window);
  add_row(metrics, {"resilience_loss", format_cell(loss)});
  const double norm_loss = loss / b.window.length();
  add_row(metrics, {"normalized_loss", format_cell(norm_loss)});

  TemporalMetrics temporal = temporal_metrics(q, q_max, events, b.cfg);
  add_row(metrics, {"max_drop", format_cell(temporal.max_drop)});
  add_row(metrics, {"residual_deficit", format_cell(temporal.residual)});
  add_row(metrics, {"mttd", format_cell(temporal.mttd)});
  add_row(metrics, {"mttr", format_cell(temporal.mttr)});
  if (temporal.mttf) {
    add_row(metrics, {"mttf", format_cell(*temporal.mttf)});
  } else {
    add_row(metrics, {"mttf", "undefined"});
    report.notes.push_back("mttf undefined: fewer than two events");
  }
  double downtime = 0.0;
  for (const auto& em : temporal.per_event) downtime += em.downtime;
  add_row(metrics, {"downtime", format_cell(downtime)});

  std::vector<SliceSeries> slices = b.slices;
  if (slices.empty()) slices.push_back({q, q_max});
  ServiceMetrics service =
      service_metrics(slices, b.latency, b.cfg, b.disrupted_slice, b.window);
  add_row(metrics, {"slice_isolation", format_cell(service.sii)});
  if (service.single_slice) {
    report.notes.push_back("single-slice run: SII reported as 1 by convention");
  }
  if (service.latency_compliance) {
    add_row(metrics, {"latency_compliance", format_cell(*service.latency_compliance)});
  }
  add_row(metrics, {"sla_violation_rate", format_cell(service.sla_violation_rate)});
  add_row(metrics, {"availability", format_cell(service.availability)});

  std::optional<double> autoscaling;
  if (!b.optimal.empty()) {
    Window full{0, static_cast<int>(b.optimal.size()) - 1};
    autoscaling = autoscaling_efficiency(b.allocated, b.optimal, full);
    add_row(metrics, {"autoscaling_efficiency", format_cell(*autoscaling)});
  }

  if (!b.composite.empty() || !b.cost.empty()) {
    std::vector<double> values;
    std::vector<double> weights;
    for (const auto& [name, w] : b.composite) {
      double v = 0.0;
      if (name == "availability") {
        v = service.availability;
      } else if (name == "latency_compliance") {
        if (!service.latency_compliance) {
          throw std::domain_error("composite uses latency_compliance but no latency series given");
        }
        v = *service.latency_compliance;
      } else if (name == "sla_compliance") {
        v = 1.0 - service.sla_violation_rate;
      } else if (name == "slice_isolation") {
        v = service.sii;
      } else if (name == "normalized_loss") {
        v = norm_loss;
      } else if (name == "autoscaling_efficiency") {
        if (!autoscaling) {
          throw std::domain_error("composite uses autoscaling_efficiency but no series given");
        }
        v = *autoscaling;
      } else {
        throw std::domain_error("unknown composite metric '" + name + "'");
      }
      values.push_back(v);
      weights.push_back(w);
    }
    std::vector<double> shortfalls;
    for (int t = b.window.first; t <= b.window.last; ++t) {
      shortfalls.push_back(1.0 - q[t] / q_max);
    }
    std::vector<double> cost = b.cost;
    if (cost.empty()) cost.assign(shortfalls.size(), 1.0);
    AggregateMetrics agg = aggregate_metrics(values, weights, shortfalls, cost);
    if (!b.composite.empty()) {
      add_row(metrics, {"r_composite", format_cell(agg.r_composite)});
    }
    add_row(metrics, {"c_resilience", format_cell(agg.c_resilience)});
  }
  report.tables.push_back(std::move(metrics));

  ReportTable ev;
  ev.name = "events";
  ev.header = {"event", "t_f",  "t_d",      "t_r",
               "downtime", "mttd", "mttr", "max_drop", "residual"};
  for (std::size_t k = 0; k < temporal.per_event.size(); ++k) {
    const auto& em = temporal.per_event[k];
    add_row(ev, {std::to_string(k), std::to_string(em.event.t_f),
                 std::to_string(em.event.t_d), std::to_string(em.event.t_r),
                 std::to_string(em.downtime), std::to_string(em.mttd),
                 std::to_string(em.mttr), format_cell(em.max_drop),
                 format_cell(em.residual)});
  }
  report.tables.push_back(std::move(ev));

  ReportTable ts;
  ts.name = "timeseries";
  ts.header = {"t", "q", "q_max", "delta_threshold", "q_sla", "q_avail"};
  for (std::size_t t = 0; t < q.size(); ++t) {
    add_row(ts, {std::to_string(t), format_cell(q[t]), format_cell(q_max),
                 format_cell(b.cfg.delta * q_max), format_cell(b.cfg.q_sla),
                 format_cell(b.cfg.q_avail)});
  }
  report.tables.push_back(std::move(ts));
}

void run_fallback_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.fallback;
  ReportTable t;
  t.name = "decisions";
  t.header = {"index"};
  const int dim = b.spec.state_dim();
  for (int i = 0; i < dim; ++i) t.header.push_back("x" + std::to_string(i));
  t.header.insert(t.header.end(), {"quad_gap", "penalty", "delta_j", "switch"});
  for (std::size_t i = 0; i < b.states.size(); ++i) {
    FallbackDecision d = fallback_decision(b.spec, b.states[i]);
    const double penalty = b.spec.lambda + b.spec.s[1] - b.spec.s[0];
    const double quad_gap = penalty - d.delta_j;
    std::vector<std::string> cells{std::to_string(i)};
    for (int k = 0; k < dim; ++k) cells.push_back(format_cell(b.states[i][k]));
    cells.push_back(format_cell(quad_gap));
    cells.push_back(format_cell(penalty));
    cells.push_back(format_cell(d.delta_j));
    cells.push_back(format_bool(d.switch_to_safe));
    add_row(t, std::move(cells));
  }
  report.tables.push_back(std::move(t));

  ReportTable s;
  s.name = "summary";
  s.header = {"metric", "value"};
  if (dim == 1 && b.spec.input_dim() == 1) {
    auto threshold = scalar_switch_threshold(b.spec);
    add_row(s, {"scalar_threshold", threshold ? format_cell(*threshold) : "never"});
  }
  const Mat pi0 = lq_fold(b.spec, 0, b.spec.P[0]);
  const Mat pi1 = lq_fold(b.spec, 1, b.spec.P[1]);
  add_row(s, {"pi0_trace", format_cell(pi0.trace())});
  add_row(s, {"pi1_trace", format_cell(pi1.trace())});
  report.tables.push_back(std::move(s));
}

void run_mtd_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.mtd;
  MtdPlan plan = mtd_plan_horizon(b.state, b.horizon);
  ReportTable t;
  t.name = "plan";
  t.header = {"stage", "surface"};
  for (const auto& c : b.state.configs) t.header.push_back(c);
  for (std::size_t k = 0; k < plan.distributions.size(); ++k) {
    std::vector<std::string> cells{std::to_string(k + 1),
                                   std::to_string(plan.surfaces[k])};
    for (double v : plan.distributions[k]) cells.push_back(format_cell(v));
    add_row(t, std::move(cells));
  }
  report.tables.push_back(std::move(t));

  ReportTable s;
  s.name = "summary";
  s.header = {"metric", "value"};
  add_row(s, {"objective", format_cell(plan.objective)});
  add_row(s, {"horizon", std::to_string(b.horizon)});
  report.tables.push_back(std::move(s));
}

void run_mpc_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.mpc;
  ReportTable decisions;
  decisions.name = "decisions";
  decisions.header = {"step", "action_index", "objective_value"};

  Trajectory traj;
  traj.q_max = b.model.q_max;
  traj.mode_labels = b.model.modes;

  RngStream realized_xi(cfg.seed, /*stream=*/500);
  RngStream realized_model(cfg.seed, /*stream=*/501);
  HybridState state = b.initial;
  for (int step = 0; step < b.steps; ++step) {
    // Planning sees the attack path from the current step onward.
    AttackerProcess planning_attacker = b.attacker;
    if (!b.attacker.path.empty()) {
      planning_attacker.path.assign(
          b.attacker.path.begin() +
              std::min<std::size_t>(step, b.attacker.path.size()),
          b.attacker.path.end());
      while (static_cast<int>(planning_attacker.path.size()) < b.horizon) {
        planning_attacker.path.push_back(Vec::Zero(b.model.attack_dim));
      }
    }
    MpcDecision d = receding_horizon_control(
        b.model, b.costs, b.horizon, b.samples, planning_attacker, b.natural,
        b.objective, state, b.actions, cfg.seed,
        /*stream_base=*/1000 + static_cast<std::uint64_t>(step) *
                                   (2 * static_cast<std::uint64_t>(b.samples) + 2));
    add_row(decisions, {std::to_string(step), std::to_string(d.action_index),
                        format_cell(d.objective_value)});

    Vec w = !b.attacker.path.empty()
                ? b.attacker.path[step]
                : (b.attacker.policy ? b.attacker.policy(state, step)
                                     : Vec::Zero(b.model.attack_dim));
    realized_xi.seek(step);
    Vec xi = b.natural.sample(realized_xi);

    TrajectoryRecord rec;
    rec.t = step;
    rec.x = state.x;
    rec.mode = state.mode;
    rec.u = d.action;
    rec.w = w;
    rec.xi = xi;
    rec.q = b.model.measure(state.x, state.mode);
    traj.records.push_back(std::move(rec));

    realized_model.seek(step);
    state = simulate_step(b.model, state, d.action, w, xi, realized_model);
  }
  TrajectoryRecord last;
  last.t = b.steps;
  last.x = state.x;
  last.mode = state.mode;
  last.q = b.model.measure(state.x, state.mode);
  traj.records.push_back(std::move(last));

  report.tables.push_back(std::move(decisions));
  report.tables.push_back(trajectory_table(traj));
}

void run_game_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.game;
  EquilibriumSolution sol =
      shapley_value_iteration(b.game, b.tolerance, b.max_iterations);
  if (!sol.converged) {
    report.notes.push_back("value iteration hit max_iterations; residual " +
                           format_cell(sol.residual));
  }

  ReportTable values;
  values.name = "values";
  values.header = {"state", "value"};
  for (int s = 0; s < b.game.num_states(); ++s) {
    add_row(values, {b.game.state_labels[s], format_cell(sol.value[s])});
  }
  report.tables.push_back(std::move(values));

  auto policy_table = [&](const char* name,
                          const std::vector<std::vector<double>>& policy,
                          const std::vector<std::vector<std::string>>& actions) {
    ReportTable t;
    t.name = name;
    t.header = {"state", "action", "probability"};
    for (int s = 0; s < b.game.num_states(); ++s) {
      for (std::size_t a = 0; a < policy[s].size(); ++a) {
        add_row(t, {b.game.state_labels[s], actions[s][a], format_cell(policy[s][a])});
      }
    }
    return t;
  };
  report.tables.push_back(
      policy_table("defender_policy", sol.defender_policy, b.game.defender_actions));
  report.tables.push_back(
      policy_table("attacker_policy", sol.attacker_policy, b.game.attacker_actions));

  ReportTable summary;
  summary.name = "summary";
  summary.header = {"metric", "value"};
  add_row(summary, {"states", std::to_string(b.game.num_states())});
  add_row(summary, {"iterations", std::to_string(sol.iterations)});
  add_row(summary, {"residual", format_cell(sol.residual)});
  add_row(summary, {"converged", format_bool(sol.converged)});
  add_row(summary, {"discount", format_cell(b.game.discount)});
  report.tables.push_back(std::move(summary));

  // Flat serialization of the solved game: payoffs and the nonzero kernel
  // entries, one row per (state, actions, successor).
  ReportTable gt;
  gt.name = "game_table";
  gt.header = {"state", "defender_action", "attacker_action",
               "payoff", "next_state", "probability"};
  for (int s = 0; s < b.game.num_states(); ++s) {
    for (std::size_t r = 0; r < b.game.defender_actions[s].size(); ++r) {
      for (std::size_t e = 0; e < b.game.attacker_actions[s].size(); ++e) {
        for (int sp = 0; sp < b.game.num_states(); ++sp) {
          const double pr = b.game.kernel[s][r][e][sp];
          if (pr == 0.0) continue;
          add_row(gt, {b.game.state_labels[s], b.game.defender_actions[s][r],
                       b.game.attacker_actions[s][e],
                       format_cell(b.game.payoff[s][r][e]),
                       b.game.state_labels[sp], format_cell(pr)});
        }
      }
    }
  }
  report.tables.push_back(std::move(gt));

  if (b.run_worst_case) {
    const auto& policy =
        b.worst_case_defender ? *b.worst_case_defender : sol.defender_policy;
    WorstCaseResult wc = worst_case_attacker(b.game, policy);
    ReportTable t;
    t.name = "worst_case";
    t.header = {"state", "attacker_action", "defender_loss"};
    for (int s = 0; s < b.game.num_states(); ++s) {
      add_row(t, {b.game.state_labels[s],
                  b.game.attacker_actions[s][wc.attacker_action[s]],
                  format_cell(wc.defender_loss[s])});
    }
    report.tables.push_back(std::move(t));
  }

  if (b.run_qlearning) {
    std::vector<std::vector<double>> attacker = sol.attacker_policy;
    if (b.qlearn_attacker == "uniform") {
      for (int s = 0; s < b.game.num_states(); ++s) {
        attacker[s].assign(b.game.attacker_actions[s].size(),
                           1.0 / b.game.attacker_actions[s].size());
      }
    }
    TabularMDP mdp = mdp_from_game(b.game, attacker);
    QLearningParams params = b.qlearn;
    params.seed = cfg.seed;
    QTable table = q_learning(mdp, params);
    ValueIterationResult vi = value_iteration(mdp);

    ReportTable t;
    t.name = "qlearning";
    t.header = {"state", "greedy_action", "greedy_q", "vi_action", "vi_value"};
    int matches = 0;
    for (int s = 0; s < b.game.num_states(); ++s) {
      if (table.greedy[s] == vi.policy[s]) ++matches;
      add_row(t, {b.game.state_labels[s],
                  b.game.defender_actions[s][table.greedy[s]],
                  format_cell(table.q[s][table.greedy[s]]),
                  b.game.defender_actions[s][vi.policy[s]],
                  format_cell(vi.value[s])});
    }
    report.tables.push_back(std::move(t));
    report.notes.push_back("q-learning greedy policy matches value iteration in " +
                           std::to_string(matches) + "/" +
                           std::to_string(b.game.num_states()) + " states");
  }
}

void scenario_tables(const RiskSummary& risk, RunReport& report) {
  ReportTable t;
  t.name = "scenarios";
  t.header = {"scenario",       "probability",  "samples",
              "mean_loss",      "var_loss",     "mean_max_drop",
              "var_max_drop",   "mean_residual", "var_residual",
              "mean_downtime",  "var_downtime"};
  auto cell = [](const std::optional<double>& v) {
    return v ? format_cell(*v) : std::string("undefined");
  };
  for (const auto& s : risk.per_scenario) {
    add_row(t, {s.name, format_cell(s.probability), std::to_string(s.samples),
                format_cell(s.mean_loss), cell(s.var_loss),
                format_cell(s.mean_max_drop), cell(s.var_max_drop),
                format_cell(s.mean_residual), cell(s.var_residual),
                format_cell(s.mean_downtime), cell(s.var_downtime)});
  }
  report.tables.push_back(std::move(t));

  ReportTable agg;
  agg.name = "aggregate";
  agg.header = {"statistic", "value"};
  add_row(agg, {"expected_loss", format_cell(risk.expected_loss)});
  add_row(agg, {"cvar", format_cell(risk.cvar)});
  add_row(agg, {"alpha", format_cell(risk.alpha)});
  report.tables.push_back(std::move(agg));
}

void run_pra_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.pra;
  std::vector<ScenarioStats> stats;
  for (std::size_t i = 0; i < b.scenarios.scenarios.size(); ++i) {
    stats.push_back(scenario_rollout_mc(
        b.twin_model, b.policy, b.scenarios.scenarios[i], b.scenarios, b.natural,
        b.samples, cfg.seed,
        /*stream_base=*/static_cast<std::uint64_t>(i + 1) << 32));
  }
  RiskSummary risk = aggregate_risk(stats, b.alpha);
  risk.master_seed = cfg.seed;
  scenario_tables(risk, report);
  for (const auto& s : stats) {
    if (!s.var_loss) {
      report.notes.push_back("scenario " + s.name +
                             ": variance undefined with a single sample");
    }
  }
}

void run_strategic_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.strategic;
  StrategicRisk res =
      strategic_pipeline(b.game, b.mode, b.twin_model, b.embedding, b.scenarios,
                         b.natural, b.samples, b.alpha, cfg.seed);
  scenario_tables(res.risk, report);

  ReportTable values;
  values.name = "equilibrium_values";
  values.header = {"state", "value"};
  for (int s = 0; s < b.game.num_states(); ++s) {
    add_row(values, {b.game.state_labels[s], format_cell(res.equilibrium.value[s])});
  }
  report.tables.push_back(std::move(values));
  report.notes.push_back(std::string("strategic mode: ") +
                         (b.mode == StrategicMode::Robust ? "robust" : "equilibrium"));
}

void run_riskgraph_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.net_riskgraph;
  CutSetFamily cuts = mocus_cut_sets(b.tree, b.graph);

  ReportTable ct;
  ct.name = "cut_sets";
  ct.header = {"index", "size", "nodes"};
  for (std::size_t i = 0; i < cuts.sets.size(); ++i) {
    std::string joined;
    for (const auto& v : cuts.sets[i]) {
      if (!joined.empty()) joined += ";";
      joined += v;
    }
    add_row(ct, {std::to_string(i), std::to_string(cuts.sets[i].size()), joined});
  }
  report.tables.push_back(std::move(ct));

  ReportTable rt;
  rt.name = "risk";
  rt.header = {"metric", "value"};
  const double formula = systemic_risk(cuts, b.risk);
  add_row(rt, {"systemic_risk", format_cell(formula)});
  if (b.exact) {
    try {
      const double exact = exact_risk(cuts, b.risk);
      add_row(rt, {"exact_risk", format_cell(exact)});
      add_row(rt, {"approximation_gap", format_cell(formula - exact)});
    } catch (const std::domain_error& e) {
      report.notes.push_back(std::string("exact risk skipped: ") + e.what());
    }
  }
  report.tables.push_back(std::move(rt));

  auto rows = importance_measures(cuts, b.risk);
  std::sort(rows.begin(), rows.end(), [](const ImportanceRow& a, const ImportanceRow& b) {
    if (a.ri != b.ri) return a.ri > b.ri;
    return a.node < b.node;
  });
  ReportTable imp;
  imp.name = "importance";
  imp.header = {"node", "r", "IP", "BI", "RI"};
  for (const auto& row : rows) {
    add_row(imp, {row.node, format_cell(row.risk), format_cell(row.ip),
                  format_cell(row.bi), format_cell(row.ri)});
  }
  report.tables.push_back(std::move(imp));

  auto ranked = rank_mitigations(cuts, b.risk, b.top_k);
  ReportTable rank;
  rank.name = "mitigation_ranking";
  rank.header = {"rank", "node", "RI"};
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    add_row(rank, {std::to_string(i + 1), ranked[i].node, format_cell(ranked[i].ri)});
  }
  report.tables.push_back(std::move(rank));
}

void run_net_kind(const ScenarioFile& cfg, RunReport& report) {
  const auto& b = *cfg.net;
  SpatialNetwork net = sample_rgg(b.intensity, b.side, b.radius, cfg.seed, 0);

  ReportTable summary;
  summary.name = "network_summary";
  summary.header = {"metric", "value"};
  add_row(summary, {"nodes", std::to_string(net.num_nodes())});
  add_row(summary, {"edges", std::to_string(net.num_edges())});
  add_row(summary, {"expected_mean_degree", format_cell(net.expected_mean_degree())});
  add_row(summary, {"torus_degenerate", format_bool(net.torus_degenerate)});
  if (net.torus_degenerate) {
    report.notes.push_back("radius exceeds side/2: torus metric degenerates");
  }
  report.tables.push_back(std::move(summary));

  if (b.degree && net.num_nodes() > 0) {
    DegreeStats stats = degree_stats(net);
    ReportTable hist;
    hist.name = "degree_histogram";
    hist.header = {"k", "count", "expected"};
    for (std::size_t k = 0; k < stats.histogram.size(); ++k) {
      add_row(hist, {std::to_string(k), std::to_string(stats.histogram[k]),
                     format_cell(net.num_nodes() * stats.poisson_pmf[k])});
    }
    report.tables.push_back(std::move(hist));

    ReportTable ds;
    ds.name = "degree_summary";
    ds.header = {"metric", "value"};
    add_row(ds, {"empirical_mean", format_cell(stats.empirical_mean)});
    add_row(ds, {"theoretical_mean", format_cell(stats.theoretical_mean)});
    add_row(ds, {"chi_square", format_cell(stats.chi_square)});
    add_row(ds, {"dof", std::to_string(stats.dof)});
    add_row(ds, {"p_value", format_cell(stats.p_value)});
    report.tables.push_back(std::move(ds));
  }

  if (b.percolation) {
    PercolationScan scan =
        percolation_scan(b.percolation->vary, b.percolation->grid,
                         b.percolation->vary == PercolationScan::Vary::Radius
                             ? b.intensity
                             : b.radius,
                         b.side, b.percolation->samples, cfg.seed);
    ReportTable t;
    t.name = "percolation";
    t.header = {"param", "mean_fraction", "stderr"};
    for (const auto& pt : scan.curve) {
      add_row(t, {format_cell(pt.param), format_cell(pt.mean_fraction),
                  format_cell(pt.std_error)});
    }
    report.tables.push_back(std::move(t));

    ReportTable ps;
    ps.name = "percolation_summary";
    ps.header = {"metric", "value"};
    add_row(ps, {"threshold", scan.bracketed ? format_cell(*scan.threshold)
                                             : "not bracketed"});
    add_row(ps, {"bracketed", format_bool(scan.bracketed)});
    report.tables.push_back(std::move(ps));
    if (!scan.bracketed) {
      report.notes.push_back("percolation threshold not bracketed by the grid");
    }
  }

  if (b.sis && net.num_nodes() > 0) {
    std::vector<double> initial(net.num_nodes(), b.sis->initial_fraction);
    SisResult sis = sis_simulate(net, b.sis->model, initial, b.sis->horizon);
    ReportTable t;
    t.name = "sis";
    t.header = {"t", "infected_fraction"};
    for (std::size_t i = 0; i < sis.infected_fraction.size(); ++i) {
      add_row(t, {std::to_string(i), format_cell(sis.infected_fraction[i])});
    }
    report.tables.push_back(std::move(t));
  }

  if (b.indicators && net.num_nodes() > 0) {
    StabilityIndicators ind =
        stability_indicators(net, b.indicators->beta, b.indicators->mu);
    ReportTable t;
    t.name = "indicators";
    t.header = {"metric", "value"};
    add_row(t, {"spectral_radius", format_cell(ind.spectral_radius)});
    add_row(t, {"algebraic_connectivity", format_cell(ind.algebraic_connectivity)});
    add_row(t, {"mean_degree", format_cell(ind.mean_degree)});
    add_row(t, {"r0", format_cell(ind.r0)});
    add_row(t, {"verdict", ind.subcritical ? "subcritical" : "supercritical"});
    add_row(t, {"connected", format_bool(ind.connected)});
    report.tables.push_back(std::move(t));
  }

  if (b.export_edges) {
    ReportTable t;
    t.name = "edges";
    t.header = {"u", "v"};
    for (int u = 0; u < net.num_nodes(); ++u) {
      for (int v : net.neighbors[u]) {
        if (v > u) add_row(t, {std::to_string(u), std::to_string(v)});
      }
    }
    report.tables.push_back(std::move(t));
  }
}

}  // namespace

RunReport run_experiment(const ScenarioFile& cfg) {
  RunReport report;
  report.kind = to_string(cfg.kind);
  report.seed = cfg.seed;
  report.toolkit_version = kToolkitVersion;
  report.config_echo = cfg.resolved_json;

  const auto start = std::chrono::steady_clock::now();
  try {
    switch (cfg.kind) {
      case ExperimentKind::Rollout:
        run_rollout_kind(cfg, report);
        break;
      case ExperimentKind::Metrics:
        run_metrics_kind(cfg, report);
        break;
      case ExperimentKind::Fallback:
        run_fallback_kind(cfg, report);
        break;
      case ExperimentKind::Mtd:
        run_mtd_kind(cfg, report);
        break;
      case ExperimentKind::Mpc:
        run_mpc_kind(cfg, report);
        break;
      case ExperimentKind::Game:
        run_game_kind(cfg, report);
        break;
      case ExperimentKind::Pra:
        run_pra_kind(cfg, report);
        break;
      case ExperimentKind::Strategic:
        run_strategic_kind(cfg, report);
        break;
      case ExperimentKind::Riskgraph:
        run_riskgraph_kind(cfg, report);
        break;
      case ExperimentKind::Net:
        run_net_kind(cfg, report);
        break;
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error("experiment '" + report.kind + "' failed: " + e.what());
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

void atomic_write(const std::filesystem::path& target, const std::string& content) {
  const auto tmp = target.parent_path() / (".tmp_" + target.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write to " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target);
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<std::string> emit_report(const RunReport& report,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir + ": " +
                             ec.message());
  }

  const bool want_csv =
      std::find(formats.begin(), formats.end(), "csv") != formats.end();
  const bool want_json =
      std::find(formats.begin(), formats.end(), "json") != formats.end();

  if (want_csv) {
    for (const auto& table : report.tables) {
      std::string content;
      for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) content += ",";
        content += csv_escape(table.header[i]);
      }
      content += "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) content += ",";
          content += csv_escape(row[i]);
        }
        content += "\n";
      }
      const fs::path target = dir / (table.name + ".csv");
      atomic_write(target, content);
      written.push_back(target.string());
    }
  }

  if (want_json) {
    json doc;
    doc["header"] = {{"kind", report.kind},
                     {"seed", report.seed},
                     {"toolkit_version", report.toolkit_version},
                     {"wall_seconds", report.wall_seconds},
                     {"timestamp", iso_timestamp()}};
    doc["config"] = json::parse(report.config_echo);
    doc["notes"] = report.notes;
    json tables = json::object();
    for (const auto& table : report.tables) {
      tables[table.name] = {{"header", table.header}, {"rows", table.rows}};
    }
    doc["tables"] = tables;
    const fs::path target = dir / "report.json";
    atomic_write(target, doc.dump(2) + "\n");
    written.push_back(target.string());
  }
  return written;
}

}  // namespace netres
