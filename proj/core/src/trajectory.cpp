#include "netres/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace netres {

double DynamicsModel::measure(const Vec& x, int mode) const {
  double q = measure_raw(x, mode);
  return std::clamp(q, 0.0, q_max);
}

int DynamicsModel::mode_index(const std::string& label) const {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] == label) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> Trajectory::q_series() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.q);
  return out;
}

std::vector<double> Trajectory::shortfall_series() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(1.0 - r.q / q_max);
  return out;
}

Vec NaturalProcess::sample(RngStream& rng) const {
  Vec v = Vec::Zero(dim);
  switch (kind) {
    case Kind::None:
      break;
    case Kind::Gaussian:
      for (int i = 0; i < dim; ++i) v[i] = sigma * rng.gauss();
      break;
    case Kind::Uniform:
      for (int i = 0; i < dim; ++i) v[i] = rng.uniform(lo, hi);
      break;
    case Kind::Bernoulli:
      for (int i = 0; i < dim; ++i) v[i] = rng.bernoulli(p) ? magnitude : 0.0;
      break;
  }
  return v;
}

HybridState simulate_step(const DynamicsModel& model, const HybridState& s,
                          const Vec& u, const Vec& w, const Vec& xi,
                          RngStream& rng) {
  if (s.x.size() != model.state_dim) {
    throw std::invalid_argument("model-mismatch: state has dimension " +
                                std::to_string(s.x.size()) + ", model declares " +
                                std::to_string(model.state_dim));
  }
  if (!model.valid_mode(s.mode)) {
    throw std::invalid_argument("model-mismatch: mode index " +
                                std::to_string(s.mode) +
                                " outside the declared mode set");
  }
  // f and phi observe identical copies of the per-step stream, so a model
  // whose state and mode depend on one joint draw stays coherent without
  // holding any mutable state of its own.
  HybridState next;
  RngStream f_rng = rng;
  next.x = model.state_update(s.x, u, w, xi, s.mode, f_rng);
  RngStream phi_rng = rng;
  next.mode = model.mode_update(s.mode, s.x, u, w, xi, phi_rng);
  if (!model.valid_mode(next.mode)) {
    throw std::logic_error("mode update left the declared mode set");
  }
  return next;
}

namespace {

Vec attacker_input(const AttackerProcess& attacker, const DynamicsModel& model,
                   const HybridState& s, int t) {
  if (!attacker.path.empty()) {
    if (t >= static_cast<int>(attacker.path.size())) {
      throw std::invalid_argument("attacker path shorter than the horizon");
    }
    return attacker.path[t];
  }
  if (attacker.policy) return attacker.policy(s, t);
  return Vec::Zero(model.attack_dim);
}

}  // namespace

Trajectory rollout(const DynamicsModel& model, const Policy& defender,
                   const AttackerProcess& attacker, const NaturalProcess& natural,
                   const HybridState& s0, int T, std::uint64_t master_seed,
                   std::uint64_t stream_id) {
  if (T < 1) throw std::invalid_argument("rollout horizon must be >= 1");

  RngStream xi_rng(master_seed, stream_id);
  RngStream model_rng(master_seed, stream_id + 1);

  Trajectory traj;
  traj.q_max = model.q_max;
  traj.mode_labels = model.modes;
  traj.records.reserve(T + 1);

  HybridState s = s0;
  for (int t = 0; t < T; ++t) {
    Vec u;
    try {
      u = defender(s, t);
    } catch (const std::domain_error& e) {
      throw std::domain_error("policy-domain error at t=" + std::to_string(t) +
                              ": " + e.what());
    }
    Vec w = attacker_input(attacker, model, s, t);
    xi_rng.seek(t);
    Vec xi = natural.sample(xi_rng);

    TrajectoryRecord rec;
    rec.t = t;
    rec.x = s.x;
    rec.mode = s.mode;
    rec.u = u;
    rec.w = w;
    rec.xi = xi;
    rec.q = model.measure(s.x, s.mode);
    traj.records.push_back(std::move(rec));

    model_rng.seek(t);
    s = simulate_step(model, s, u, w, xi, model_rng);
  }

  TrajectoryRecord last;
  last.t = T;
  last.x = s.x;
  last.mode = s.mode;
  last.q = model.measure(s.x, s.mode);
  traj.records.push_back(std::move(last));
  return traj;
}

Policy zero_policy(const DynamicsModel& model) {
  const int dim = model.input_dim;
  return [dim](const HybridState&, int) { return Vec::Zero(dim); };
}

Policy constant_policy(Vec u) {
  return [u = std::move(u)](const HybridState&, int) { return u; };
}

Policy feedback_policy(Eigen::MatrixXd gain) {
  return [gain = std::move(gain)](const HybridState& s, int) -> Vec {
    if (gain.cols() != s.x.size()) {
      throw std::domain_error("feedback gain incompatible with state dimension");
    }
    return -gain * s.x;
  };
}

}  // namespace netres
