#include "netres/models.hpp"

#include <cmath>
#include <stdexcept>

namespace netres {

double apply_measure(const MeasureSpec& m, double x, double q_max) {
  switch (m.kind) {
    case MeasureSpec::Kind::Identity:
      return x;
    case MeasureSpec::Kind::NegatedAbs:
      return q_max - std::abs(x);
    case MeasureSpec::Kind::Capacity:
      return q_max * (1.0 - x / m.x_sat);
  }
  return x;
}

DynamicsModel make_scalar_linear(const ScalarLinearParams& p) {
  DynamicsModel m;
  m.state_dim = 1;
  m.input_dim = 1;
  m.attack_dim = 1;
  m.natural_dim = 1;
  m.modes = {"normal"};
  m.q_max = p.q_max;
  m.state_update = [p](const Vec& x, const Vec& u, const Vec& w, const Vec& xi,
                       int, RngStream&) -> Vec {
    Vec next(1);
    next[0] = p.a * x[0] + (u.size() ? p.b_u * u[0] : 0.0) +
              (w.size() ? p.b_w * w[0] : 0.0) + (xi.size() ? p.b_xi * xi[0] : 0.0);
    return next;
  };
  m.mode_update = [](int mode, const Vec&, const Vec&, const Vec&, const Vec&,
                     RngStream&) { return mode; };
  m.measure_raw = [p](const Vec& x, int) { return apply_measure(p.measure, x[0], p.q_max); };
  return m;
}

DynamicsModel make_two_mode_linear(const TwoModeLinearParams& p) {
  DynamicsModel m;
  m.state_dim = 1;
  m.modes = {"normal", "abnormal"};
  m.q_max = p.q_max;
  m.state_update = [p](const Vec& x, const Vec& u, const Vec& w, const Vec& xi,
                       int mode, RngStream&) -> Vec {
    double a = mode == 0 ? p.a_normal : p.a_abnormal;
    Vec next(1);
    next[0] = a * x[0] + (u.size() ? p.b_u * u[0] : 0.0) +
              (w.size() ? p.b_w * w[0] : 0.0) + (xi.size() ? p.b_xi * xi[0] : 0.0);
    return next;
  };
  m.mode_update = [p](int mode, const Vec& x, const Vec&, const Vec&, const Vec&,
                      RngStream& rng) -> int {
    bool want_draw = p.p_trip > 0.0 || p.p_recover > 0.0;
    double draw = want_draw ? rng.next_double() : 1.0;
    if (mode == 0) {
      if (std::abs(x[0]) > p.trip_threshold || draw < p.p_trip) return 1;
      return 0;
    }
    if (p.irreversible) return 1;
    if (std::abs(x[0]) <= p.recover_threshold || draw < p.p_recover) return 0;
    return 1;
  };
  m.measure_raw = [p](const Vec& x, int) { return apply_measure(p.measure, x[0], p.q_max); };
  return m;
}

DynamicsModel make_slice_queue(const SliceQueueParams& p) {
  DynamicsModel m;
  m.state_dim = 1;
  m.modes = {"normal", "overload"};
  m.q_max = p.q_max;
  m.state_update = [p](const Vec& x, const Vec& u, const Vec& w, const Vec& xi,
                       int, RngStream&) -> Vec {
    double attack = w.size() ? w[0] : 0.0;
    double boost = u.size() ? u[0] : 0.0;
    double burst = xi.size() ? xi[0] : 0.0;
    Vec next(1);
    next[0] = x[0] + p.lambda0 + p.lambda_attack * attack + burst -
              (p.mu + p.mu_boost * boost);
    if (next[0] < 0.0) next[0] = 0.0;  // queues cannot go negative
    return next;
  };
  m.mode_update = [p](int, const Vec& x, const Vec&, const Vec&, const Vec&,
                      RngStream&) -> int {
    return x[0] > p.overload_threshold ? 1 : 0;
  };
  m.measure_raw = [p](const Vec& x, int) {
    return p.q_max * (1.0 - x[0] / p.x_cap);
  };
  return m;
}

DynamicsModel make_tabular(const TabularModelParams& p) {
  if (p.num_states < 1 || p.num_inputs < 1 || p.num_attacks < 1) {
    throw std::invalid_argument("tabular model needs positive state/action counts");
  }
  const auto n_modes = p.modes.size();
  if (p.transitions.size() != n_modes || p.measure.size() != n_modes) {
    throw std::invalid_argument("tabular model tables do not cover the mode set");
  }
  for (std::size_t q = 0; q < n_modes; ++q) {
    if (static_cast<int>(p.transitions[q].size()) != p.num_states ||
        static_cast<int>(p.measure[q].size()) != p.num_states) {
      throw std::invalid_argument("tabular model tables do not cover the state set");
    }
    for (const auto& per_state : p.transitions[q]) {
      if (static_cast<int>(per_state.size()) != p.num_inputs) {
        throw std::invalid_argument("tabular transition row missing defender actions");
      }
      for (const auto& per_u : per_state) {
        if (static_cast<int>(per_u.size()) != p.num_attacks) {
          throw std::invalid_argument("tabular transition row missing attacker actions");
        }
        for (const auto& row : per_u) {
          double total = 0.0;
          for (const auto& tr : row) {
            total += tr.prob;
            if (tr.next_state < 0 || tr.next_state >= p.num_states ||
                tr.next_mode < 0 || tr.next_mode >= static_cast<int>(n_modes)) {
              throw std::invalid_argument("tabular transition leaves the state space");
            }
          }
          if (row.empty() || std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("tabular transition row must sum to 1");
          }
        }
      }
    }
  }

  DynamicsModel m;
  m.state_dim = 1;
  m.modes = p.modes;
  m.q_max = p.q_max;

  auto index = [p](const Vec& v, int limit, const char* what) -> int {
    int i = v.size() ? static_cast<int>(std::llround(v[0])) : 0;
    if (i < 0 || i >= limit) {
      throw std::invalid_argument(std::string("tabular model: ") + what +
                                  " index out of range");
    }
    return i;
  };

  // simulate_step hands f and phi identical copies of the per-step stream,
  // so sampling the same row in both yields one coherent joint draw of
  // (next_state, next_mode).
  auto pick = [p, index](int mode, const Vec& x, const Vec& u, const Vec& w,
                         RngStream& rng) -> const TabularTransition& {
    int s = index(x, p.num_states, "state");
    int ui = index(u, p.num_inputs, "defender action");
    int wi = index(w, p.num_attacks, "attacker action");
    const auto& row = p.transitions[mode][s][ui][wi];
    if (row.size() == 1) return row.front();
    double draw = rng.next_double();
    double acc = 0.0;
    for (const auto& tr : row) {
      acc += tr.prob;
      if (draw < acc) return tr;
    }
    return row.back();
  };
  m.state_update = [pick](const Vec& x, const Vec& u, const Vec& w, const Vec&,
                          int mode, RngStream& rng) -> Vec {
    Vec next(1);
    next[0] = pick(mode, x, u, w, rng).next_state;
    return next;
  };
  m.mode_update = [pick](int mode, const Vec& x, const Vec& u, const Vec& w,
                         const Vec&, RngStream& rng) {
    return pick(mode, x, u, w, rng).next_mode;
  };
  m.measure_raw = [p, index](const Vec& x, int mode) {
    int s = index(x, p.num_states, "state");
    return p.measure[mode][s];
  };
  return m;
}

}  // namespace netres
