#include "netres/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "netres/errors.hpp"

namespace netres {

namespace {

void check_window(const std::vector<double>& q, Window w) {
  if (w.last < w.first) throw std::domain_error("empty metric window");
  if (w.first < 0 || w.last >= static_cast<int>(q.size())) {
    throw std::domain_error("metric window outside the trajectory");
  }
}

}  // namespace

void validate_events(const std::vector<DisruptionEvent>& events, int horizon) {
  std::vector<std::string> problems;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    const std::string tag = "event " + std::to_string(k);
    if (!(e.t_f <= e.t_d && e.t_d <= e.t_r)) {
      problems.push_back(tag + ": requires t_f <= t_d <= t_r");
    }
    if (e.t_f < 0 || e.t_r > horizon) {
      problems.push_back(tag + ": outside the trajectory horizon");
    }
    if (k > 0 && events[k - 1].t_r >= e.t_f) {
      problems.push_back(tag + ": overlaps or precedes the previous event");
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

double resilience_loss(const std::vector<double>& q, double q_max, Window window) {
  if (q_max <= 0.0) throw std::domain_error("q_max must be positive");
  check_window(q, window);
  double loss = 0.0;
  for (int t = window.first; t <= window.last; ++t) {
    loss += 1.0 - q[t] / q_max;
  }
  return loss;
}

double resilience_loss(const Trajectory& traj, Window window) {
  return resilience_loss(traj.q_series(), traj.q_max, window);
}

TemporalMetrics temporal_metrics(const std::vector<double>& q, double q_max,
                                 const std::vector<DisruptionEvent>& events,
                                 const MetricsConfig& cfg) {
  validate_events(events, static_cast<int>(q.size()) - 1);
  TemporalMetrics out;
  const double threshold = cfg.delta * q_max;
  double mttd_sum = 0.0;
  double mttr_sum = 0.0;
  for (const auto& e : events) {
    EventMetrics em;
    em.event = e;
    em.mttd = e.t_d - e.t_f;
    em.mttr = e.t_r - e.t_d;
    for (int t = e.t_f; t <= e.t_r; ++t) {
      if (q[t] < threshold) ++em.downtime;
      em.max_drop = std::max(em.max_drop, q_max - q[t]);
    }
    em.residual = q_max - q[e.t_r];
    mttd_sum += em.mttd;
    mttr_sum += em.mttr;
    out.per_event.push_back(em);
  }
  const auto n = events.size();
  if (n > 0) {
    out.mttd = mttd_sum / static_cast<double>(n);
    out.mttr = mttr_sum / static_cast<double>(n);
    out.residual = out.per_event.back().residual;
    for (const auto& em : out.per_event) {
      out.max_drop = std::max(out.max_drop, em.max_drop);
    }
  }
  if (n >= 2) {
    double gap_sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      gap_sum += events[k].t_f - events[k - 1].t_r;
    }
    out.mttf = gap_sum / static_cast<double>(n - 1);
  }
  return out;
}

TemporalMetrics temporal_metrics(const Trajectory& traj,
                                 const std::vector<DisruptionEvent>& events,
                                 const MetricsConfig& cfg) {
  return temporal_metrics(traj.q_series(), traj.q_max, events, cfg);
}

std::vector<DisruptionEvent> detect_events(const std::vector<double>& q,
                                           double q_max, const MetricsConfig& cfg,
                                           int stabilization,
                                           const Detector& detector) {
  const double onset_threshold = (1.0 - 1e-9) * q_max;
  const double service_threshold = cfg.delta * q_max;
  const int n = static_cast<int>(q.size());

  auto default_detector = [&](int t_f) -> std::optional<int> {
    for (int t = t_f; t < n; ++t) {
      if (q[t] < service_threshold) return t;
      if (q[t] >= onset_threshold && t > t_f) return std::nullopt;  // dip healed
    }
    return std::nullopt;
  };

  std::vector<DisruptionEvent> events;
  int t = 0;
  while (t < n) {
    if (q[t] >= onset_threshold) {
      ++t;
      continue;
    }
    const int t_f = t;
    std::optional<int> t_d =
        detector ? detector(q, q_max, t_f) : default_detector(t_f);
    if (!t_d) {
      // Shallow dip that never registers: skip past it.
      while (t < n && q[t] < onset_threshold) ++t;
      continue;
    }
    int t_r = n - 1;
    for (int s = *t_d; s < n; ++s) {
      if (q[s] >= service_threshold) {
        bool sustained = true;
        for (int k = 1; k < stabilization && s + k < n; ++k) {
          if (q[s + k] < service_threshold) {
            sustained = false;
            break;
          }
        }
        if (sustained) {
          t_r = s;
          break;
        }
      }
    }
    events.push_back({t_f, *t_d, t_r});
    t = t_r + 1;
  }
  return events;
}

ServiceMetrics service_metrics(const std::vector<SliceSeries>& slices,
                               const std::vector<double>& latency,
                               const MetricsConfig& cfg, int disrupted_slice,
                               Window window) {
  const int n_slices = static_cast<int>(slices.size());
  if (n_slices < 1) throw std::domain_error("service metrics need >= 1 slice");
  if (disrupted_slice < 0 || disrupted_slice >= n_slices) {
    throw std::domain_error("disrupted slice index out of range");
  }

  ServiceMetrics out;
  if (n_slices == 1) {
    out.sii = 1.0;  // undefined by the N-1 normalizer; reported as 1 and flagged
    out.single_slice = true;
  } else {
    double cross = 0.0;
    for (int j = 0; j < n_slices; ++j) {
      if (j == disrupted_slice) continue;
      check_window(slices[j].q, window);
      double worst = 0.0;
      for (int t = window.first; t <= window.last; ++t) {
        worst = std::max(worst, 1.0 - slices[j].q[t] / slices[j].q_max);
      }
      cross += worst;
    }
    out.sii = 1.0 - cross / static_cast<double>(n_slices - 1);
  }

  if (!latency.empty()) {
    int ok = 0;
    for (double l : latency) {
      if (l <= cfg.l_max) ++ok;
    }
    out.latency_compliance = static_cast<double>(ok) / latency.size();
  }

  const auto& q = slices[disrupted_slice].q;
  if (q.empty()) throw std::domain_error("disrupted slice has an empty series");
  int violations = 0;
  int available = 0;
  for (double v : q) {
    if (v < cfg.q_sla) ++violations;
    if (v >= cfg.q_avail) ++available;
  }
  out.sla_violation_rate = static_cast<double>(violations) / q.size();
  out.availability = static_cast<double>(available) / q.size();
  return out;
}

double autoscaling_efficiency(const std::vector<double>& allocated,
                              const std::vector<double>& optimal, Window window) {
  check_window(optimal, window);
  check_window(allocated, window);
  double deviation = 0.0;
  double demand = 0.0;
  for (int t = window.first; t <= window.last; ++t) {
    deviation += std::abs(allocated[t] - optimal[t]);
    demand += optimal[t];
  }
  if (demand <= 0.0) throw std::domain_error("optimal allocation sums to zero");
  return 1.0 - deviation / demand;
}

AggregateMetrics aggregate_metrics(const std::vector<double>& metric_values,
                                   const std::vector<double>& weights,
                                   const std::vector<double>& shortfalls,
                                   const std::vector<double>& cost) {
  if (metric_values.size() != weights.size()) {
    throw std::domain_error("composite weights do not match the metric count");
  }
  double weight_sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::domain_error("composite weights must be nonnegative");
    weight_sum += w;
  }
  if (!weights.empty() && std::abs(weight_sum - 1.0) > 1e-12) {
    throw std::domain_error("composite weights must sum to 1");
  }
  if (shortfalls.size() != cost.size()) {
    throw std::domain_error("cost series does not cover the shortfall window");
  }

  AggregateMetrics out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.r_composite += weights[i] * metric_values[i];
  }
  for (std::size_t t = 0; t < shortfalls.size(); ++t) {
    if (cost[t] < 0.0) throw std::domain_error("cost coefficients must be >= 0");
    out.c_resilience += cost[t] * shortfalls[t];
  }
  return out;
}

}  // namespace netres
