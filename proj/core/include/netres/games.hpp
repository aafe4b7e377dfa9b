#pragma once

#include <string>
#include <vector>

namespace netres {

/// Finite zero-sum discounted stochastic game. `payoff[s][r][e]` is the
/// defender's stage payoff for defender action r and attacker action e
/// (the attacker receives its negative); `kernel[s][r][e]` is a dense
/// probability row over successor states.
struct StochasticGame {
  std::vector<std::string> state_labels;
  std::vector<std::vector<std::string>> defender_actions;  // per state
  std::vector<std::vector<std::string>> attacker_actions;  // per state
  std::vector<std::vector<std::vector<double>>> payoff;
  std::vector<std::vector<std::vector<std::vector<double>>>> kernel;
  double discount = 0.95;

  int num_states() const { return static_cast<int>(state_labels.size()); }
  /// Throws ValidationError listing every malformed row or range violation.
  void validate() const;
};

struct EquilibriumSolution {
  std::vector<double> value;                          // V(s), defender view
  std::vector<std::vector<double>> defender_policy;   // pi_D(.|s)
  std::vector<std::vector<double>> attacker_policy;   // pi_A(.|s)
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;               // sup-norm per sweep
  bool converged = false;
};

/// Shapley value iteration: repeatedly solves the stage matrix game
///   M_s[r][e] = payoff[s][r][e] + beta * sum_s' P(s'|s,r,e) V(s')
/// until the sup-norm residual drops below `tol`, then extracts stationary
/// mixed strategies at the fixed point. Geometric convergence at rate beta;
/// hitting `max_iter` returns converged = false with the final residual.
EquilibriumSolution shapley_value_iteration(const StochasticGame& game,
                                            double tol = 1e-10,
                                            int max_iter = 10000);

/// Attacker–defender slice-migration instance. States are (queue bucket,
/// hosting node) pairs; the attacker floods or probes nodes, the defender
/// stays, migrates, or scales. The queue follows the bucketed arrival/
/// service recursion, saturating at both ends. Attack effort is credited
/// to the defender's payoff so the attacker internalizes its own costs in
/// the zero-sum reduction.
struct SliceMigrationParams {
  int nodes = 3;          // J >= 2
  int queue_levels = 5;   // K >= 2
  double lambda0 = 1.0;       // legitimate arrivals per step
  double lambda_flood = 2.0;  // extra arrivals when the hosted node is flooded
  double probe_load = 0.0;    // extra arrivals from probing the hosted node
  double mu = 1.0;            // baseline service
  double mu_boost = 1.0;      // additional service under scale_up
  double mu_migrate = 0.0;    // service during the migration step
  double burst_prob = 0.0;    // chance of one extra arrival bucket
  double queue_cost = 1.0;    // loss per occupied bucket
  double cost_migrate = 0.4;
  double cost_scale = 0.2;
  double cost_flood = 0.3;
  double cost_probe = 0.05;
  double discount = 0.95;
};
StochasticGame build_slice_migration_game(const SliceMigrationParams& p);

/// State index helper for the slice-migration layout.
inline int slice_state_index(int queue_bucket, int node, int nodes) {
  return queue_bucket * nodes + node;
}

struct WorstCaseResult {
  std::vector<int> attacker_action;    // greedy best response per state
  std::vector<double> defender_loss;   // attacker value = -J_D per state
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Best-response attacker against a frozen defender policy: the induced
/// single-agent MDP is solved by value iteration. The returned loss is at
/// least the equilibrium loss -V(s) at every state, with equality when the
/// defender plays the equilibrium policy.
WorstCaseResult worst_case_attacker(const StochasticGame& game,
                                    const std::vector<std::vector<double>>& defender_policy,
                                    double tol = 1e-10, int max_iter = 100000);

}  // namespace netres
