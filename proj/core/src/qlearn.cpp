#include "netres/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netres/rng.hpp"

namespace netres {

TabularMDP mdp_from_game(const StochasticGame& game,
                         const std::vector<std::vector<double>>& attacker_policy) {
  game.validate();
  const int n = game.num_states();
  if (static_cast<int>(attacker_policy.size()) != n) {
    throw std::domain_error("attacker policy does not cover the state set");
  }
  TabularMDP mdp;
  mdp.discount = game.discount;
  mdp.reward.resize(n);
  mdp.kernel.resize(n);
  for (int s = 0; s < n; ++s) {
    const auto n_r = game.defender_actions[s].size();
    const auto n_e = game.attacker_actions[s].size();
    if (attacker_policy[s].size() != n_e) {
      throw std::domain_error("attacker policy row does not match the action set");
    }
    mdp.reward[s].assign(n_r, 0.0);
    mdp.kernel[s].assign(n_r, std::vector<double>(n, 0.0));
    for (std::size_t r = 0; r < n_r; ++r) {
      for (std::size_t e = 0; e < n_e; ++e) {
        const double pe = attacker_policy[s][e];
        if (pe == 0.0) continue;
        mdp.reward[s][r] += pe * game.payoff[s][r][e];
        for (int sp = 0; sp < n; ++sp) {
          mdp.kernel[s][r][sp] += pe * game.kernel[s][r][e][sp];
        }
      }
    }
  }
  return mdp;
}

ValueIterationResult value_iteration(const TabularMDP& mdp, double tol,
                                     int max_iter) {
  const int n = mdp.num_states();
  ValueIterationResult out;
  out.value.assign(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (int it = 0; it < max_iter; ++it) {
    double residual = 0.0;
    for (int s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < mdp.num_actions(s); ++a) {
        double cont = 0.0;
        for (int sp = 0; sp < n; ++sp) cont += mdp.kernel[s][a][sp] * out.value[sp];
        best = std::max(best, mdp.reward[s][a] + mdp.discount * cont);
      }
      next[s] = best;
      residual = std::max(residual, std::abs(next[s] - out.value[s]));
    }
    out.value = next;
    out.residual = residual;
    out.iterations = it + 1;
    if (residual < tol) break;
  }
  out.policy.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < mdp.num_actions(s); ++a) {
      double cont = 0.0;
      for (int sp = 0; sp < n; ++sp) cont += mdp.kernel[s][a][sp] * out.value[sp];
      double val = mdp.reward[s][a] + mdp.discount * cont;
      if (val > best + 1e-12) {
        best = val;
        out.policy[s] = a;
      }
    }
  }
  return out;
}

namespace {

int sample_row(const std::vector<double>& row, double draw) {
  double acc = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    acc += row[i];
    if (draw < acc) return static_cast<int>(i);
  }
  return static_cast<int>(row.size()) - 1;
}

int argmax_q(const std::vector<double>& q) {
  int best = 0;
  for (std::size_t a = 1; a < q.size(); ++a) {
    if (q[a] > q[best]) best = static_cast<int>(a);
  }
  return best;
}

}  // namespace

QTable q_learning(const TabularMDP& mdp, const QLearningParams& params) {
  if (params.epsilon < 0.0 || params.epsilon > 1.0) {
    throw std::domain_error("exploration rate must lie in [0, 1]");
  }
  if (params.rate_c <= 0.0) {
    throw std::domain_error("learning-rate constant must be positive");
  }
  const int n = mdp.num_states();
  QTable table;
  table.q.resize(n);
  std::vector<std::vector<double>> visits(n);
  for (int s = 0; s < n; ++s) {
    table.q[s].assign(mdp.num_actions(s), 0.0);
    visits[s].assign(mdp.num_actions(s), 0.0);
  }

  RngStream rng(params.seed, /*stream_id=*/7);
  std::uint64_t step_key = 0;
  for (int ep = 0; ep < params.episodes; ++ep) {
    rng.seek(step_key++);
    int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    for (int step = 0; step < params.steps_per_episode; ++step) {
      rng.seek(step_key++);
      int a = rng.bernoulli(params.epsilon)
                  ? static_cast<int>(rng.below(table.q[s].size()))
                  : argmax_q(table.q[s]);
      int sp = sample_row(mdp.kernel[s][a], rng.next_double());
      visits[s][a] += 1.0;
      const double alpha = params.rate_c / (params.rate_c + visits[s][a]);
      const double target =
          mdp.reward[s][a] + mdp.discount * table.q[sp][argmax_q(table.q[sp])];
      table.q[s][a] = (1.0 - alpha) * table.q[s][a] + alpha * target;
      s = sp;
    }
  }

  table.greedy.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < table.q[s].size(); ++a) {
      if (table.q[s][a] > best + 1e-12) {
        best = table.q[s][a];
        table.greedy[s] = static_cast<int>(a);
      }
    }
  }
  return table;
}

}  // namespace netres
