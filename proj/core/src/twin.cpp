#include "netres/twin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "netres/errors.hpp"
#include "netres/stats.hpp"

namespace netres {

void DigitalTwin::validate_against(const DynamicsModel& real) const {
  std::vector<std::string> problems;
  if (surrogate.state_dim != real.state_dim) {
    problems.push_back("twin state dimension differs from the real model");
  }
  if (surrogate.modes != real.modes) {
    problems.push_back("twin mode set differs from the real model");
  }
  if (!problems.empty()) throw ValidationError(problems);
}

FidelityResult twin_fidelity(const Trajectory& real, const Trajectory& twin,
                             std::optional<double> e_max) {
  if (real.records.size() != twin.records.size()) {
    throw std::domain_error("fidelity needs equal-horizon trajectories");
  }
  if (real.records.size() < 2) {
    throw std::domain_error("fidelity needs at least one transition");
  }
  if (e_max && *e_max <= 0.0) {
    throw std::domain_error("e_max must be positive");
  }

  FidelityResult out;
  for (std::size_t t = 1; t < real.records.size(); ++t) {
    if (real.records[t].x.size() != twin.records[t].x.size()) {
      throw std::domain_error("fidelity needs matching state dimensions");
    }
    out.errors.push_back((real.records[t].x - twin.records[t].x).norm());
  }

  double normalizer = e_max ? *e_max : 0.0;
  if (!e_max) {
    for (double e : out.errors) normalizer = std::max(normalizer, e);
  }
  out.e_max = normalizer;
  if (normalizer <= 0.0) {
    out.score = 1.0;  // zero tracking error throughout
    return out;
  }
  double acc = 0.0;
  for (double e : out.errors) acc += e / normalizer;
  out.score = std::clamp(1.0 - acc / static_cast<double>(out.errors.size()), 0.0, 1.0);
  return out;
}

void ScenarioSet::validate() const {
  std::vector<std::string> problems;
  if (scenarios.empty()) problems.push_back("scenario set is empty");
  double total = 0.0;
  for (const auto& s : scenarios) {
    if (s.probability < 0.0) {
      problems.push_back("scenario " + s.name + " has a negative probability");
    }
    total += s.probability;
  }
  if (!scenarios.empty() && std::abs(total - 1.0) > 1e-12) {
    problems.push_back("scenario probabilities sum to " + std::to_string(total));
  }
  if (horizon < 1) problems.push_back("horizon must be >= 1");
  if (window.first < 0 || window.last > horizon || window.last < window.first) {
    problems.push_back("metric window must fit inside the horizon");
  }
  if (!problems.empty()) throw ValidationError(problems);
}

namespace {

struct SampleMetrics {
  double loss = 0.0;
  double max_drop = 0.0;
  double residual = 0.0;
  double downtime = 0.0;
};

SampleMetrics metrics_on_window(const Trajectory& traj, Window w, double q_min) {
  SampleMetrics m;
  for (int t = w.first; t <= w.last; ++t) {
    const double shortfall = 1.0 - traj.records[t].q / traj.q_max;
    m.loss += shortfall;
    m.max_drop = std::max(m.max_drop, shortfall);
    if (traj.records[t].q < q_min) m.downtime += 1.0;
  }
  m.residual = 1.0 - traj.records[w.last].q / traj.q_max;
  return m;
}

std::optional<double> maybe_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return std::nullopt;
  return sample_variance(xs);
}

ScenarioStats summarize(const std::string& name, double probability,
                        const std::vector<SampleMetrics>& samples) {
  ScenarioStats st;
  st.name = name;
  st.probability = probability;
  st.samples = static_cast<int>(samples.size());
  std::vector<double> losses, drops, residuals, downtimes;
  for (const auto& s : samples) {
    losses.push_back(s.loss);
    drops.push_back(s.max_drop);
    residuals.push_back(s.residual);
    downtimes.push_back(s.downtime);
  }
  st.loss_samples = losses;
  st.mean_loss = mean(losses);
  st.var_loss = maybe_variance(losses);
  st.mean_max_drop = mean(drops);
  st.var_max_drop = maybe_variance(drops);
  st.mean_residual = mean(residuals);
  st.var_residual = maybe_variance(residuals);
  st.mean_downtime = mean(downtimes);
  st.var_downtime = maybe_variance(downtimes);
  return st;
}

}  // namespace

ScenarioStats scenario_rollout_mc(const DynamicsModel& twin_model,
                                  const Policy& policy, const Scenario& scenario,
                                  const ScenarioSet& set,
                                  const NaturalProcess& natural, int num_samples,
                                  std::uint64_t master_seed,
                                  std::uint64_t stream_base) {
  if (num_samples < 1) throw std::domain_error("need at least one sample");
  const DynamicsModel& model =
      scenario.model_override ? *scenario.model_override : twin_model;

  std::vector<SampleMetrics> samples;
  samples.reserve(num_samples);
  for (int k = 0; k < num_samples; ++k) {
    Trajectory traj = rollout(model, policy, scenario.attacker, natural,
                              scenario.initial, set.horizon, master_seed,
                              stream_base + 4ull * k);
    samples.push_back(metrics_on_window(traj, set.window, set.q_min));
  }
  return summarize(scenario.name, scenario.probability, samples);
}

RiskSummary aggregate_risk(const std::vector<ScenarioStats>& per_scenario,
                           double alpha) {
  if (alpha < 0.0 || alpha >= 1.0) {
    throw std::domain_error("CVaR level must lie in [0, 1)");
  }
  if (per_scenario.empty()) throw std::domain_error("no scenario statistics");
  double total_p = 0.0;
  for (const auto& s : per_scenario) {
    if (s.probability < 0.0) throw std::domain_error("negative scenario probability");
    total_p += s.probability;
  }
  if (std::abs(total_p - 1.0) > 1e-12) {
    throw std::domain_error("scenario probabilities must sum to 1");
  }

  RiskSummary out;
  out.alpha = alpha;
  out.per_scenario = per_scenario;
  std::vector<WeightedSample> pooled;
  for (const auto& s : per_scenario) {
    if (s.loss_samples.empty()) {
      throw std::domain_error("scenario " + s.name + " carries no loss samples");
    }
    out.expected_loss += s.probability * s.mean_loss;
    const double w = s.probability / static_cast<double>(s.loss_samples.size());
    for (double l : s.loss_samples) pooled.push_back({l, w});
  }
  out.cvar = cvar(std::move(pooled), alpha);
  return out;
}

namespace {

// Frozen mixed strategy replayed through the twin: the game state is read
// off the twin state through the embedding, one seeded draw per step picks
// the action, and `input_of` maps it into the twin's input space.
Policy frozen_strategy(const std::vector<std::vector<double>>& policy,
                       const GameEmbedding& embedding,
                       const std::function<Vec(int)>& input_of, std::uint64_t seed,
                       std::uint64_t stream) {
  return [=](const HybridState& s, int t) -> Vec {
    const int gs = embedding.state_of(s);
    if (gs < 0 || gs >= static_cast<int>(policy.size())) {
      throw std::domain_error("embedding produced game state " + std::to_string(gs));
    }
    RngStream rng(seed, stream);
    rng.seek(static_cast<std::uint64_t>(t));
    double draw = rng.next_double();
    double acc = 0.0;
    std::size_t pick = policy[gs].size() - 1;
    for (std::size_t a = 0; a < policy[gs].size(); ++a) {
      acc += policy[gs][a];
      if (draw < acc) {
        pick = a;
        break;
      }
    }
    return input_of(static_cast<int>(pick));
  };
}

}  // namespace

StrategicRisk strategic_pipeline(const StochasticGame& game, StrategicMode mode,
                                 const DynamicsModel& twin_model,
                                 const GameEmbedding& embedding,
                                 const ScenarioSet& scenarios,
                                 const NaturalProcess& natural, int num_samples,
                                 double alpha, std::uint64_t master_seed) {
  scenarios.validate();
  if (num_samples < 1) throw std::domain_error("need at least one sample");
  StrategicRisk out;
  out.mode = mode;
  out.equilibrium = shapley_value_iteration(game);

  std::vector<std::vector<double>> attacker_policy;
  if (mode == StrategicMode::Robust) {
    out.worst_case =
        worst_case_attacker(game, out.equilibrium.defender_policy);
    attacker_policy.resize(game.num_states());
    for (int s = 0; s < game.num_states(); ++s) {
      attacker_policy[s].assign(game.attacker_actions[s].size(), 0.0);
      attacker_policy[s][out.worst_case->attacker_action[s]] = 1.0;
    }
  } else {
    attacker_policy = out.equilibrium.attacker_policy;
  }

  std::vector<ScenarioStats> stats;
  for (std::size_t i = 0; i < scenarios.scenarios.size(); ++i) {
    const auto& scenario = scenarios.scenarios[i];
    const DynamicsModel& model =
        scenario.model_override ? *scenario.model_override : twin_model;

    std::vector<SampleMetrics> samples;
    samples.reserve(num_samples);
    for (int k = 0; k < num_samples; ++k) {
      const std::uint64_t base =
          (static_cast<std::uint64_t>(i + 1) << 32) + 8ull * k;
      Policy defender =
          frozen_strategy(out.equilibrium.defender_policy, embedding,
                          embedding.defender_input, master_seed, base + 4);
      AttackerProcess attacker;
      attacker.policy = frozen_strategy(attacker_policy, embedding,
                                        embedding.attacker_input, master_seed,
                                        base + 5);
      Trajectory traj = rollout(model, defender, attacker, natural,
                                scenario.initial, scenarios.horizon, master_seed,
                                base);
      samples.push_back(metrics_on_window(traj, scenarios.window, scenarios.q_min));
    }
    stats.push_back(summarize(scenario.name, scenario.probability, samples));
  }
  out.risk = aggregate_risk(stats, alpha);
  out.risk.master_seed = master_seed;
  return out;
}

}  // namespace netres
