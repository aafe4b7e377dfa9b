#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netres/trajectory.hpp"

namespace netres {

/// How a model turns its continuous state into the performance reading Q.
struct MeasureSpec {
  enum class Kind {
    Identity,   // Q = x[0]
    NegatedAbs, // Q = q_max - |x[0]|
    Capacity,   // Q = q_max * (1 - x[0]/x_sat)
  };
  Kind kind = Kind::Identity;
  double x_sat = 1.0;
};

/// x' = a x + b_u u + b_w w + b_xi xi, single mode.
struct ScalarLinearParams {
  double a = 1.0;
  double b_u = 0.0;
  double b_w = 0.0;
  double b_xi = 0.0;
  double q_max = 1.0;
  MeasureSpec measure{};
};
DynamicsModel make_scalar_linear(const ScalarLinearParams& p);

/// Two disruption modes (normal / abnormal) with per-mode scalar dynamics.
/// The mode trips to abnormal when |x| exceeds `trip_threshold`; with
/// `irreversible` unset it returns to normal below `recover_threshold`.
/// `p_trip` / `p_recover` add seeded random mode flips on top of the rule.
struct TwoModeLinearParams {
  double a_normal = 1.0;
  double a_abnormal = 0.5;
  double b_u = 0.0;
  double b_w = 1.0;
  double b_xi = 1.0;
  double trip_threshold = 1.0;
  double recover_threshold = 0.5;
  bool irreversible = false;
  double p_trip = 0.0;
  double p_recover = 0.0;
  double q_max = 1.0;
  MeasureSpec measure{MeasureSpec::Kind::NegatedAbs, 1.0};
};
DynamicsModel make_two_mode_linear(const TwoModeLinearParams& p);

/// Signaling-queue model: x' = max(0, x + lambda0 + lambda_attack*w - mu(u))
/// with mu(u) = mu + mu_boost*u. w in [0,1] scales the adversarial arrival
/// rate; the mode flips to "overload" while the queue exceeds the threshold.
struct SliceQueueParams {
  double lambda0 = 2.0;
  double lambda_attack = 3.0;
  double mu = 4.0;
  double mu_boost = 0.0;
  double overload_threshold = 10.0;
  double x_cap = 20.0;  // queue length at which Q reaches 0
  double q_max = 1.0;
};
DynamicsModel make_slice_queue(const SliceQueueParams& p);

/// Finite tabular hybrid model: integer states 0..num_states-1 carried in
/// x[0], inputs u[0]/w[0] interpreted as action indices. Rows with several
/// entries are sampled with the model's seeded stream.
struct TabularTransition {
  double prob = 1.0;
  int next_state = 0;
  int next_mode = 0;
};
struct TabularModelParams {
  int num_states = 1;
  int num_inputs = 1;
  int num_attacks = 1;
  std::vector<std::string> modes{"normal"};
  double q_max = 1.0;
  // transitions[mode][state][u][w] -> distribution over (state, mode)
  std::vector<std::vector<std::vector<std::vector<std::vector<TabularTransition>>>>> transitions;
  // measure[mode][state] -> Q
  std::vector<std::vector<double>> measure;
};
DynamicsModel make_tabular(const TabularModelParams& p);

double apply_measure(const MeasureSpec& m, double x, double q_max);

}  // namespace netres
