#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "netres/trajectory.hpp"

namespace netres {

/// Inclusive time-index window [first, last].
struct Window {
  int first = 0;
  int last = 0;
  int length() const { return last - first + 1; }
};

/// One disruptive event: failure onset, detection, recovery.
struct DisruptionEvent {
  int t_f = 0;
  int t_d = 0;
  int t_r = 0;
};

/// Ordered, non-overlapping events with t_f <= t_d <= t_r each.
/// Throws ValidationError listing every violated invariant.
void validate_events(const std::vector<DisruptionEvent>& events, int horizon);

struct MetricsConfig {
  double delta = 0.8;              // downtime threshold fraction of q_max
  double q_sla = 0.0;              // SLA guarantee, same units as Q
  double q_avail = 0.0;            // availability threshold
  double l_max = 0.0;              // latency bound
  std::vector<double> weights;     // composite weights, sum to 1
  std::vector<double> cost;        // per-step cost C_t over the window
  double alpha_cvar = 0.0;
};

/// Cumulative resilience loss over the window:
///   L = sum_{t in [t_f, t_r]} (1 - Q_t / q_max).
double resilience_loss(const std::vector<double>& q, double q_max, Window window);
double resilience_loss(const Trajectory& traj, Window window);

struct EventMetrics {
  DisruptionEvent event;
  int downtime = 0;          // steps with Q_t below delta*q_max
  int mttd = 0;              // t_d - t_f
  int mttr = 0;              // t_r - t_d
  double max_drop = 0.0;     // max(q_max - Q_t) on the event window
  double residual = 0.0;     // q_max - Q at t_r
};

struct TemporalMetrics {
  std::vector<EventMetrics> per_event;
  double mttd = 0.0;                 // mean over events
  double mttr = 0.0;
  std::optional<double> mttf;        // undefined with fewer than two events
  double max_drop = 0.0;             // worst over all events
  double residual = 0.0;             // residual of the last event
};

TemporalMetrics temporal_metrics(const std::vector<double>& q, double q_max,
                                 const std::vector<DisruptionEvent>& events,
                                 const MetricsConfig& cfg);
TemporalMetrics temporal_metrics(const Trajectory& traj,
                                 const std::vector<DisruptionEvent>& events,
                                 const MetricsConfig& cfg);

/// Detector hook: given the series and the failure onset, return the
/// detection step, or nothing if the disruption never registers.
using Detector = std::function<std::optional<int>(const std::vector<double>& q,
                                                  double q_max, int t_f)>;

/// Event extraction when timestamps are not annotated. Onset is the first
/// step measurably below q_max after a normal period; detection defaults to
/// the first step below delta*q_max; recovery is the first step at or above
/// delta*q_max sustained for `stabilization` steps.
std::vector<DisruptionEvent> detect_events(const std::vector<double>& q,
                                           double q_max, const MetricsConfig& cfg,
                                           int stabilization = 3,
                                           const Detector& detector = nullptr);

struct SliceSeries {
  std::vector<double> q;
  double q_max = 1.0;
};

struct ServiceMetrics {
  double sii = 1.0;
  bool single_slice = false;               // SII convention flag for N = 1
  std::optional<double> latency_compliance;
  double sla_violation_rate = 0.0;
  double availability = 0.0;
};

/// Slice isolation over the disruption window plus horizon-wide compliance
/// rates for the disrupted slice.
ServiceMetrics service_metrics(const std::vector<SliceSeries>& slices,
                               const std::vector<double>& latency,
                               const MetricsConfig& cfg, int disrupted_slice,
                               Window window);

/// eta = 1 - sum|R_t - R*_t| / sum R*_t over the window. May be negative
/// when over-provisioning dominates; reported unclamped.
double autoscaling_efficiency(const std::vector<double>& allocated,
                              const std::vector<double>& optimal, Window window);

struct AggregateMetrics {
  double r_composite = 0.0;
  double c_resilience = 0.0;
};

/// Weighted composite of normalized metrics plus cost-weighted loss.
/// `shortfalls` and `cost` must cover the same window, element for element.
AggregateMetrics aggregate_metrics(const std::vector<double>& metric_values,
                                   const std::vector<double>& weights,
                                   const std::vector<double>& shortfalls,
                                   const std::vector<double>& cost);

}  // namespace netres
