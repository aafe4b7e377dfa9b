#include "netres/mpc.hpp"

#include <cmath>
#include <stdexcept>

#include "netres/stats.hpp"

namespace netres {

MpcDecision receding_horizon_control(
    const DynamicsModel& model, const MpcCosts& costs, int horizon,
    int num_samples, const AttackerProcess& attacker,
    const NaturalProcess& natural, const MpcObjective& objective,
    const HybridState& state, const std::vector<Vec>& actions,
    std::uint64_t master_seed, std::uint64_t stream_base) {
  if (actions.empty()) throw std::domain_error("candidate action set is empty");
  if (horizon < 1) throw std::domain_error("planning horizon must be >= 1");
  if (num_samples < 1) throw std::domain_error("need at least one scenario sample");
  if (!costs.stage || !costs.control || !costs.terminal) {
    throw std::domain_error("stage, control, and terminal costs must all be set");
  }
  if (objective.kind == MpcObjective::Kind::CVaR &&
      (objective.alpha < 0.0 || objective.alpha >= 1.0)) {
    throw std::domain_error("CVaR level must lie in [0, 1)");
  }

  const int n_actions = static_cast<int>(actions.size());
  double seq_count = std::pow(static_cast<double>(n_actions), horizon);
  if (seq_count > 2e7) {
    throw std::domain_error("action tree too large: |U|^H exceeds 2e7");
  }
  const long total_sequences = static_cast<long>(seq_count);

  // Pre-sample the natural disturbances once; every candidate sequence sees
  // the same draws, which keeps cost comparisons low-variance.
  std::vector<std::vector<Vec>> xi(num_samples, std::vector<Vec>(horizon));
  for (int k = 0; k < num_samples; ++k) {
    RngStream rng(master_seed, stream_base + 2ull * k);
    for (int tau = 0; tau < horizon; ++tau) {
      rng.seek(tau);
      xi[k][tau] = natural.sample(rng);
    }
  }

  std::vector<int> seq(horizon, 0);
  std::vector<double> totals(num_samples, 0.0);
  MpcDecision best;
  bool have_best = false;

  for (long idx = 0; idx < total_sequences; ++idx) {
    // Decode idx into a lexicographic action sequence (most significant
    // digit first), so earlier sequences win ties.
    long rem = idx;
    for (int tau = horizon - 1; tau >= 0; --tau) {
      seq[tau] = static_cast<int>(rem % n_actions);
      rem /= n_actions;
    }

    for (int k = 0; k < num_samples; ++k) {
      RngStream model_rng(master_seed, stream_base + 2ull * k + 1);
      HybridState s = state;
      double total = 0.0;
      for (int tau = 0; tau < horizon; ++tau) {
        const Vec& u = actions[seq[tau]];
        Vec w = !attacker.path.empty()
                    ? (tau < static_cast<int>(attacker.path.size())
                           ? attacker.path[tau]
                           : Vec::Zero(model.attack_dim))
                    : (attacker.policy ? attacker.policy(s, tau)
                                       : Vec::Zero(model.attack_dim));
        total += costs.stage(s.x, u, s.mode) + costs.control(u, s.mode);
        model_rng.seek(tau);
        s = simulate_step(model, s, u, w, xi[k][tau], model_rng);
      }
      total += costs.terminal(s.x, s.mode);
      totals[k] = total;
    }

    double value;
    if (objective.kind == MpcObjective::Kind::Expectation || objective.alpha == 0.0) {
      value = mean(totals);
    } else {
      value = cvar(totals, objective.alpha);
    }

    if (!have_best || value < best.objective_value) {
      have_best = true;
      best.objective_value = value;
      best.action_index = seq[0];
    }
  }

  best.action = actions[best.action_index];
  return best;
}

}  // namespace netres
