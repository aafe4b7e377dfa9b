#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netres/games.hpp"
#include "netres/metrics.hpp"
#include "netres/trajectory.hpp"

namespace netres {

/// Surrogate model running in parallel with a real system, fed the same
/// controls and a replayed attack path.
struct DigitalTwin {
  DynamicsModel surrogate;
  AttackerProcess replayed_attack;

  /// Twin and real model must agree on state dimension and mode set.
  void validate_against(const DynamicsModel& real) const;
};

struct FidelityResult {
  std::vector<double> errors;  // e_t = |x_t - x_twin_t|, t = 1..T
  double score = 0.0;          // F_T in [0, 1]
  double e_max = 0.0;          // normalizer actually used
};

/// Normalized tracking fidelity F_T = 1 - (1/T) sum e_t / e_max, clipped to
/// [0, 1]. Without an explicit e_max the largest observed error is used,
/// making the score relative; a perfectly tracking twin scores 1 either way.
FidelityResult twin_fidelity(const Trajectory& real, const Trajectory& twin,
                             std::optional<double> e_max = std::nullopt);

/// One labeled disruption scenario for probabilistic risk assessment.
struct Scenario {
  std::string name;
  double probability = 0.0;
  AttackerProcess attacker;
  HybridState initial;
  std::optional<DynamicsModel> model_override;  // scenario-specific disruption law
};

struct ScenarioSet {
  std::vector<Scenario> scenarios;
  Window window;        // [t_f, t_r] metric window
  double q_min = 0.0;   // downtime threshold
  int horizon = 1;

  void validate() const;  // probabilities >= 0 and summing to 1
};

/// Per-scenario Monte Carlo summary. Variances carry no value when a single
/// sample was drawn.
struct ScenarioStats {
  std::string name;
  double probability = 0.0;
  int samples = 0;
  std::vector<double> loss_samples;
  double mean_loss = 0.0;
  std::optional<double> var_loss;
  double mean_max_drop = 0.0;
  std::optional<double> var_max_drop;
  double mean_residual = 0.0;
  std::optional<double> var_residual;
  double mean_downtime = 0.0;
  std::optional<double> var_downtime;
};

/// N seeded rollouts of one scenario differing only in their natural-
/// disturbance streams; reports normalized loss L, maximum drop M, residual
/// deficit D, and downtime T_d over the scenario window, with unbiased
/// sample means and (N-1)-denominator variances.
ScenarioStats scenario_rollout_mc(const DynamicsModel& twin_model,
                                  const Policy& policy, const Scenario& scenario,
                                  const ScenarioSet& set,
                                  const NaturalProcess& natural, int num_samples,
                                  std::uint64_t master_seed,
                                  std::uint64_t stream_base = 0);

struct RiskSummary {
  double expected_loss = 0.0;
  double cvar = 0.0;
  double alpha = 0.0;
  std::vector<ScenarioStats> per_scenario;
  std::uint64_t master_seed = 0;
};

/// Probability-weighted aggregation: E[L] mixes the per-scenario means;
/// CVaR comes from the pooled weighted sample distribution through the
/// minimization form, evaluated exactly by sorted tail-averaging.
RiskSummary aggregate_risk(const std::vector<ScenarioStats>& per_scenario,
                           double alpha);

/// Bridge between game-layer states/actions and the twin's input spaces.
/// `state_of` must throw std::domain_error for unmapped states.
struct GameEmbedding {
  std::function<int(const HybridState&)> state_of;
  std::function<Vec(int)> defender_input;
  std::function<Vec(int)> attacker_input;
};

enum class StrategicMode { Equilibrium, Robust };

struct StrategicRisk {
  RiskSummary risk;
  EquilibriumSolution equilibrium;
  std::optional<WorstCaseResult> worst_case;  // robust mode only
  StrategicMode mode = StrategicMode::Equilibrium;
};

/// Game-to-twin pipeline: solve the stochastic game (equilibrium, or
/// equilibrium defender versus best-response attacker in robust mode),
/// freeze the resulting strategies, replay them through the twin under
/// seeded natural disturbances, and aggregate the per-scenario metrics.
StrategicRisk strategic_pipeline(const StochasticGame& game, StrategicMode mode,
                                 const DynamicsModel& twin_model,
                                 const GameEmbedding& embedding,
                                 const ScenarioSet& scenarios,
                                 const NaturalProcess& natural, int num_samples,
                                 double alpha, std::uint64_t master_seed);

}  // namespace netres
