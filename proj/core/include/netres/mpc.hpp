#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netres/trajectory.hpp"

namespace netres {

/// Planning objective over sampled disturbance scenarios: the sample mean,
/// or the CVaR tail-average at level alpha (alpha = 0 recovers the mean).
struct MpcObjective {
  enum class Kind { Expectation, CVaR };
  Kind kind = Kind::Expectation;
  double alpha = 0.0;
};

struct MpcCosts {
  std::function<double(const Vec& x, const Vec& u, int mode)> stage;   // l(x,u,q)
  std::function<double(const Vec& u, int mode)> control;               // c(u,q)
  std::function<double(const Vec& x, int mode)> terminal;              // V(x,q)
};

struct MpcDecision {
  int action_index = 0;
  Vec action;
  double objective_value = 0.0;
};

/// One receding-horizon decision: exhaustive search over length-H action
/// sequences from a finite candidate set, each evaluated against N sampled
/// disturbance paths shared across candidates (common random numbers).
/// Returns the first action of the minimizing sequence; ties fall to the
/// lexicographically smallest index sequence. The caller applies the action
/// and re-plans on its own loop.
MpcDecision receding_horizon_control(
    const DynamicsModel& model, const MpcCosts& costs, int horizon,
    int num_samples, const AttackerProcess& attacker,
    const NaturalProcess& natural, const MpcObjective& objective,
    const HybridState& state, const std::vector<Vec>& actions,
    std::uint64_t master_seed, std::uint64_t stream_base = 1000);

}  // namespace netres
