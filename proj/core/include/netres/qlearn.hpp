#pragma once

#include <cstdint>
#include <vector>

#include "netres/games.hpp"

namespace netres {

/// Finite MDP with dense kernel rows; the agent maximizes discounted reward.
struct TabularMDP {
  std::vector<std::vector<double>> reward;               // reward[s][a]
  std::vector<std::vector<std::vector<double>>> kernel;  // kernel[s][a][s']
  double discount = 0.95;

  int num_states() const { return static_cast<int>(reward.size()); }
  int num_actions(int s) const { return static_cast<int>(reward[s].size()); }
};

/// Defender-side MDP induced by freezing the attacker's mixed policy.
TabularMDP mdp_from_game(const StochasticGame& game,
                         const std::vector<std::vector<double>>& attacker_policy);

struct ValueIterationResult {
  std::vector<double> value;
  std::vector<int> policy;  // greedy, lowest action index on ties
  int iterations = 0;
  double residual = 0.0;
};
ValueIterationResult value_iteration(const TabularMDP& mdp, double tol = 1e-12,
                                     int max_iter = 100000);

struct QLearningParams {
  int episodes = 200;
  int steps_per_episode = 100;
  double epsilon = 0.2;   // exploration rate
  double rate_c = 50.0;   // learning rate alpha(s,a) = c / (c + visits(s,a))
  std::uint64_t seed = 0;
};

struct QTable {
  std::vector<std::vector<double>> q;
  std::vector<int> greedy;  // lowest action index on ties
};

/// Tabular Q-learning with seeded epsilon-greedy exploration and a
/// visit-count learning-rate schedule. Episodes restart from seeded random
/// states so every state gets visited on small instances.
QTable q_learning(const TabularMDP& mdp, const QLearningParams& params);

}  // namespace netres
