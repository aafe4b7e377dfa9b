#include "netres/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netres/errors.hpp"
#include "netres/matrix_game.hpp"

namespace netres {

void StochasticGame::validate() const {
  std::vector<std::string> problems;
  const int n = num_states();
  if (n < 1) problems.push_back("game has no states");
  if (!(discount > 0.0 && discount < 1.0)) {
    problems.push_back("discount must lie strictly inside (0, 1)");
  }
  auto sized = [&](auto& v, const char* what) {
    if (static_cast<int>(v.size()) != n) {
      problems.push_back(std::string(what) + " does not cover the state set");
      return false;
    }
    return true;
  };
  if (!sized(defender_actions, "defender action table") ||
      !sized(attacker_actions, "attacker action table") ||
      !sized(payoff, "payoff table") || !sized(kernel, "transition kernel")) {
    throw ValidationError(problems);
  }
  for (int s = 0; s < n; ++s) {
    const std::string tag = "state " + std::to_string(s);
    const auto n_r = defender_actions[s].size();
    const auto n_e = attacker_actions[s].size();
    if (n_r == 0) problems.push_back(tag + ": empty defender action set");
    if (n_e == 0) problems.push_back(tag + ": empty attacker action set");
    if (payoff[s].size() != n_r || kernel[s].size() != n_r) {
      problems.push_back(tag + ": payoff/kernel rows do not match defender actions");
      continue;
    }
    for (std::size_t r = 0; r < n_r; ++r) {
      if (payoff[s][r].size() != n_e || kernel[s][r].size() != n_e) {
        problems.push_back(tag + ": payoff/kernel columns do not match attacker actions");
        continue;
      }
      for (std::size_t e = 0; e < n_e; ++e) {
        if (!std::isfinite(payoff[s][r][e])) {
          problems.push_back(tag + ": non-finite payoff entry");
        }
        const auto& row = kernel[s][r][e];
        if (static_cast<int>(row.size()) != n) {
          problems.push_back(tag + ": kernel row has wrong length");
          continue;
        }
        double total = 0.0;
        bool negative = false;
        for (double p : row) {
          if (p < 0.0) negative = true;
          total += p;
        }
        if (negative) problems.push_back(tag + ": negative transition probability");
        if (std::abs(total - 1.0) > 1e-12) {
          problems.push_back(tag + ": kernel row sums to " + std::to_string(total));
        }
      }
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

namespace {

std::vector<std::vector<double>> stage_matrix(const StochasticGame& game, int s,
                                              const std::vector<double>& value) {
  const auto n_r = game.defender_actions[s].size();
  const auto n_e = game.attacker_actions[s].size();
  std::vector<std::vector<double>> m(n_r, std::vector<double>(n_e, 0.0));
  for (std::size_t r = 0; r < n_r; ++r) {
    for (std::size_t e = 0; e < n_e; ++e) {
      double cont = 0.0;
      const auto& row = game.kernel[s][r][e];
      for (int sp = 0; sp < game.num_states(); ++sp) cont += row[sp] * value[sp];
      m[r][e] = game.payoff[s][r][e] + game.discount * cont;
    }
  }
  return m;
}

}  // namespace

EquilibriumSolution shapley_value_iteration(const StochasticGame& game,
                                            double tol, int max_iter) {
  game.validate();
  const int n = game.num_states();
  EquilibriumSolution sol;
  sol.value.assign(n, 0.0);

  std::vector<double> next(n, 0.0);
  for (int it = 0; it < max_iter; ++it) {
    double residual = 0.0;
    for (int s = 0; s < n; ++s) {
      next[s] = solve_matrix_game(stage_matrix(game, s, sol.value)).value;
      residual = std::max(residual, std::abs(next[s] - sol.value[s]));
    }
    sol.value = next;
    sol.residual = residual;
    sol.residual_history.push_back(residual);
    sol.iterations = it + 1;
    if (residual < tol) {
      sol.converged = true;
      break;
    }
  }

  sol.defender_policy.resize(n);
  sol.attacker_policy.resize(n);
  for (int s = 0; s < n; ++s) {
    auto stage = solve_matrix_game(stage_matrix(game, s, sol.value));
    sol.defender_policy[s] = std::move(stage.row_strategy);
    sol.attacker_policy[s] = std::move(stage.col_strategy);
  }
  return sol;
}

StochasticGame build_slice_migration_game(const SliceMigrationParams& p) {
  if (p.nodes < 2) throw std::domain_error("slice migration needs >= 2 nodes");
  if (p.queue_levels < 2) throw std::domain_error("slice migration needs >= 2 queue levels");
  for (double v : {p.lambda0, p.lambda_flood, p.probe_load, p.mu, p.mu_boost,
                   p.mu_migrate, p.queue_cost, p.cost_migrate, p.cost_scale,
                   p.cost_flood, p.cost_probe}) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::domain_error("slice migration parameters must be finite and >= 0");
    }
  }
  if (p.burst_prob < 0.0 || p.burst_prob > 1.0) {
    throw std::domain_error("burst probability must lie in [0, 1]");
  }

  const int J = p.nodes;
  const int K = p.queue_levels;
  const int n_states = K * J;

  StochasticGame g;
  g.discount = p.discount;
  g.state_labels.reserve(n_states);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < J; ++j) {
      g.state_labels.push_back("q" + std::to_string(k) + "_n" + std::to_string(j));
    }
  }

  g.defender_actions.resize(n_states);
  g.attacker_actions.resize(n_states);
  g.payoff.resize(n_states);
  g.kernel.resize(n_states);

  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < J; ++j) {
      const int s = slice_state_index(k, j, J);

      // Defender: stay, scale_up on the hosting node, migrate elsewhere.
      std::vector<std::string> r_labels{"stay", "scale_up"};
      std::vector<int> migrate_target{-1, -1};
      for (int jp = 0; jp < J; ++jp) {
        if (jp == j) continue;
        r_labels.push_back("migrate_to_" + std::to_string(jp));
        migrate_target.push_back(jp);
      }

      // Attacker: idle, flood(j'), probe(j').
      std::vector<std::string> e_labels{"idle"};
      std::vector<int> flood_target{-1};
      std::vector<int> probe_target{-1};
      for (int jp = 0; jp < J; ++jp) {
        e_labels.push_back("flood_" + std::to_string(jp));
        flood_target.push_back(jp);
        probe_target.push_back(-1);
      }
      for (int jp = 0; jp < J; ++jp) {
        e_labels.push_back("probe_" + std::to_string(jp));
        flood_target.push_back(-1);
        probe_target.push_back(jp);
      }

      const auto n_r = r_labels.size();
      const auto n_e = e_labels.size();
      g.defender_actions[s] = r_labels;
      g.attacker_actions[s] = e_labels;
      g.payoff[s].assign(n_r, std::vector<double>(n_e, 0.0));
      g.kernel[s].assign(n_r, std::vector<std::vector<double>>(
                                  n_e, std::vector<double>(n_states, 0.0)));

      for (std::size_t r = 0; r < n_r; ++r) {
        const bool scaling = r == 1;
        const bool migrating = migrate_target[r] >= 0;
        const int next_node = migrating ? migrate_target[r] : j;
        const double service =
            migrating ? p.mu_migrate : (scaling ? p.mu + p.mu_boost : p.mu);
        const double defender_cost =
            migrating ? p.cost_migrate : (scaling ? p.cost_scale : 0.0);

        for (std::size_t e = 0; e < n_e; ++e) {
          double arrivals = p.lambda0;
          double attack_cost = 0.0;
          if (flood_target[e] >= 0) {
            attack_cost = p.cost_flood;
            if (flood_target[e] == j) arrivals += p.lambda_flood;
          } else if (probe_target[e] >= 0) {
            attack_cost = p.cost_probe;
            if (probe_target[e] == j) arrivals += p.probe_load;
          }

          const int drift = static_cast<int>(std::llround(arrivals - service));
          const int base = std::clamp(k + drift, 0, K - 1);
          const int burst = std::clamp(base + 1, 0, K - 1);
          auto& row = g.kernel[s][r][e];
          row[slice_state_index(base, next_node, J)] += 1.0 - p.burst_prob;
          row[slice_state_index(burst, next_node, J)] += p.burst_prob;

          g.payoff[s][r][e] = -p.queue_cost * k - defender_cost + attack_cost;
        }
      }
    }
  }
  g.validate();
  return g;
}

WorstCaseResult worst_case_attacker(
    const StochasticGame& game,
    const std::vector<std::vector<double>>& defender_policy, double tol,
    int max_iter) {
  game.validate();
  const int n = game.num_states();
  if (static_cast<int>(defender_policy.size()) != n) {
    throw std::domain_error("defender policy does not cover the state set");
  }
  for (int s = 0; s < n; ++s) {
    if (defender_policy[s].size() != game.defender_actions[s].size()) {
      throw std::domain_error("defender policy row does not match the action set");
    }
  }

  // Freeze the defender: the attacker faces an MDP whose reward is the
  // defender's expected loss -u_D.
  std::vector<std::vector<double>> reward(n);
  std::vector<std::vector<std::vector<double>>> trans(n);
  for (int s = 0; s < n; ++s) {
    const auto n_e = game.attacker_actions[s].size();
    reward[s].assign(n_e, 0.0);
    trans[s].assign(n_e, std::vector<double>(n, 0.0));
    for (std::size_t e = 0; e < n_e; ++e) {
      for (std::size_t r = 0; r < game.defender_actions[s].size(); ++r) {
        const double pr = defender_policy[s][r];
        if (pr == 0.0) continue;
        reward[s][e] -= pr * game.payoff[s][r][e];
        for (int sp = 0; sp < n; ++sp) {
          trans[s][e][sp] += pr * game.kernel[s][r][e][sp];
        }
      }
    }
  }

  WorstCaseResult out;
  std::vector<double> v(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (int it = 0; it < max_iter; ++it) {
    double residual = 0.0;
    for (int s = 0; s < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < reward[s].size(); ++e) {
        double cont = 0.0;
        for (int sp = 0; sp < n; ++sp) cont += trans[s][e][sp] * v[sp];
        best = std::max(best, reward[s][e] + game.discount * cont);
      }
      next[s] = best;
      residual = std::max(residual, std::abs(next[s] - v[s]));
    }
    v = next;
    out.residual = residual;
    out.iterations = it + 1;
    if (residual < tol) {
      out.converged = true;
      break;
    }
  }

  out.defender_loss = v;
  out.attacker_action.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < reward[s].size(); ++e) {
      double cont = 0.0;
      for (int sp = 0; sp < n; ++sp) cont += trans[s][e][sp] * v[sp];
      double val = reward[s][e] + game.discount * cont;
      if (val > best + 1e-15) {
        best = val;
        out.attacker_action[s] = static_cast<int>(e);
      }
    }
  }
  return out;
}

}  // namespace netres
