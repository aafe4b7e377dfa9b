#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "netres/rng.hpp"

namespace netres {

using Vec = Eigen::VectorXd;

/// Hybrid state: continuous network state plus a discrete disruption mode.
/// The mode is an index into the owning model's mode label set.
struct HybridState {
  Vec x;
  int mode = 0;
};

/// Hybrid dynamics model. `state_update` advances the continuous state,
/// `mode_update` advances the disruption mode, `measure` maps the hybrid
/// state to a scalar performance reading in [0, q_max]. Updates may consume
/// draws from the supplied stream; models stay immutable after construction
/// and are safe to share across concurrent rollouts.
struct DynamicsModel {
  using StateUpdate = std::function<Vec(const Vec& x, const Vec& u, const Vec& w,
                                        const Vec& xi, int mode, RngStream& rng)>;
  using ModeUpdate = std::function<int(int mode, const Vec& x, const Vec& u,
                                       const Vec& w, const Vec& xi, RngStream& rng)>;
  using Measure = std::function<double(const Vec& x, int mode)>;

  int state_dim = 1;
  int input_dim = 1;        // defender action u
  int attack_dim = 1;       // adversarial disturbance w
  int natural_dim = 1;      // natural disturbance xi
  std::vector<std::string> modes{"normal"};
  double q_max = 1.0;

  StateUpdate state_update;
  ModeUpdate mode_update;
  Measure measure_raw;

  /// Measurement clipped to the declared performance range.
  double measure(const Vec& x, int mode) const;

  bool valid_mode(int mode) const {
    return mode >= 0 && mode < static_cast<int>(modes.size());
  }
  int mode_index(const std::string& label) const;  // -1 when unknown
};

struct TrajectoryRecord {
  int t = 0;
  Vec x;
  int mode = 0;
  Vec u;   // empty on the terminal record
  Vec w;
  Vec xi;
  double q = 0.0;  // measured performance Q_t
};

/// Sampled path of the hybrid system, one record per time step 0..T.
struct Trajectory {
  std::vector<TrajectoryRecord> records;
  double q_max = 1.0;
  std::vector<std::string> mode_labels;

  int horizon() const { return static_cast<int>(records.size()) - 1; }
  std::vector<double> q_series() const;
  std::vector<double> shortfall_series() const;  // 1 - Q_t/q_max per record
};

/// Deterministic feedback policy u = pi(state, t). Policies that are not
/// defined on a reached state must throw std::domain_error.
using Policy = std::function<Vec(const HybridState&, int t)>;

/// Attacker input: a fixed path takes precedence over a policy; with
/// neither set the attacker input is zero.
struct AttackerProcess {
  std::vector<Vec> path;
  Policy policy;

  static AttackerProcess zero() { return {}; }
  static AttackerProcess fixed(std::vector<Vec> p) { return {std::move(p), nullptr}; }
};

/// Seeded generator specification for the natural disturbance path.
/// Given the same master seed and stream id the generated path is
/// bit-for-bit reproducible.
struct NaturalProcess {
  enum class Kind { None, Gaussian, Uniform, Bernoulli };

  Kind kind = Kind::None;
  int dim = 1;
  double sigma = 1.0;      // Gaussian
  double lo = 0.0;         // Uniform
  double hi = 1.0;
  double p = 0.5;          // Bernoulli
  double magnitude = 1.0;  // Bernoulli: value emitted on success

  static NaturalProcess none() { return {}; }

  Vec sample(RngStream& rng) const;
};

/// One hybrid transition. Throws std::invalid_argument on dimension or mode
/// mismatch between the state and the model.
HybridState simulate_step(const DynamicsModel& model, const HybridState& s,
                          const Vec& u, const Vec& w, const Vec& xi,
                          RngStream& rng);

/// Rolls the system forward T steps and records the full path. Natural
/// disturbances come from stream `stream_id`; model-internal randomness from
/// stream `stream_id + 1`. Re-running with identical arguments produces a
/// byte-identical trajectory.
Trajectory rollout(const DynamicsModel& model, const Policy& defender,
                   const AttackerProcess& attacker, const NaturalProcess& natural,
                   const HybridState& s0, int T, std::uint64_t master_seed,
                   std::uint64_t stream_id = 0);

/// Zero-input policy of the model's input dimension.
Policy zero_policy(const DynamicsModel& model);

/// Constant-input policy.
Policy constant_policy(Vec u);

/// Linear state feedback u = -K x.
Policy feedback_policy(Eigen::MatrixXd gain);

}  // namespace netres
