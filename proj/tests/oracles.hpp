// Independent oracles used by the unit and acceptance suites. Everything
// here recomputes expected values through a different route than the
// library (grid search, enumeration, eta scans), so agreement is evidence
// rather than tautology.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "netres/fallback.hpp"
#include "netres/riskgraph.hpp"

namespace oracles {

// --- one-dimensional grid minimization with refinement ---------------------
// Three passes ending at `final_step` resolution; valid for unimodal
// objectives (all uses here are convex quadratics after partial
// minimization).
inline double grid_min(const std::function<double(double)>& f, double lo,
                       double hi, double final_step, double* arg = nullptr) {
  double best_x = lo;
  double best = std::numeric_limits<double>::infinity();
  double step = (hi - lo) / 800.0;
  double a = lo;
  double b = hi;
  for (int pass = 0; pass < 3; ++pass) {
    if (pass == 2) step = final_step;
    for (double x = a; x <= b + 0.5 * step; x += step) {
      const double v = f(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    a = best_x - 2.0 * step;
    b = best_x + 2.0 * step;
    step = std::max(final_step, step / 40.0);
  }
  if (arg) *arg = best_x;
  return best;
}

// --- brute-force two-stage LQ fallback cost ---------------------------------
// Commit to mode m at the current (abnormal) step; both continuous controls
// found by nested grid search. Control dimension must be 1.
inline double lq_two_step_cost(const netres::LQFallbackSpec& spec,
                               const Eigen::VectorXd& x, int commit_mode,
                               double control_range, double final_step) {
  const auto& a0 = spec.A[0];
  const auto& am = spec.A[commit_mode];
  const Eigen::VectorXd b = spec.B.col(0);
  const double r = spec.R(0, 0);

  auto inner = [&](const Eigen::VectorXd& x1) {
    auto stage2 = [&](double u1) {
      const Eigen::VectorXd x2 = am * x1 + b * u1;
      return u1 * u1 * r + x2.dot(spec.P[commit_mode] * x2);
    };
    return x1.dot(spec.Q[commit_mode] * x1) + spec.s[commit_mode] +
           grid_min(stage2, -control_range, control_range, final_step);
  };

  auto stage1 = [&](double u0) {
    const Eigen::VectorXd x1 = a0 * x + b * u0;
    return u0 * u0 * r + inner(x1);
  };
  double base = x.dot(spec.Q[0] * x) + spec.s[0] +
                (commit_mode == 1 ? spec.lambda : 0.0);
  return base + grid_min(stage1, -control_range, control_range, final_step);
}

struct LqOracleVerdict {
  double cost_stay = 0.0;
  double cost_switch = 0.0;
  bool switch_better = false;
};

inline LqOracleVerdict lq_brute_force(const netres::LQFallbackSpec& spec,
                                      const Eigen::VectorXd& x,
                                      double control_range = 12.0,
                                      double final_step = 1e-3) {
  LqOracleVerdict v;
  v.cost_stay = lq_two_step_cost(spec, x, 0, control_range, final_step);
  v.cost_switch = lq_two_step_cost(spec, x, 1, control_range, final_step);
  v.switch_better = v.cost_switch < v.cost_stay;
  return v;
}

// --- first-order simplex minimizer ------------------------------------------
// Mirror descent in entropy geometry for E_f[tilt] + eps * KL(f || f_prev),
// started from the uniform distribution with a deliberately inexact step
// (eta = 1/(2 eps)), so the optimum is approached iteratively through
// gradient information alone. Euclidean projected gradient stalls on this
// objective: its curvature eps/f is unbounded near the boundary.
inline double simplex_objective(const std::vector<double>& f,
                                const std::vector<double>& f_prev,
                                const std::vector<double>& tilt, double eps) {
  double val = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    val += f[c] * tilt[c];
    if (f[c] > 0.0) val += eps * f[c] * std::log(f[c] / f_prev[c]);
  }
  return val;
}

inline std::vector<double> minimize_simplex_md(const std::vector<double>& f_prev,
                                               const std::vector<double>& tilt,
                                               double eps, int iters = 400) {
  const std::size_t n = f_prev.size();
  std::vector<double> f(n, 1.0 / static_cast<double>(n));
  const double eta = 0.5 / eps;  // log-domain contraction factor 1/2
  std::vector<double> g(n);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t c = 0; c < n; ++c) {
      const double fc = std::max(f[c], 1e-300);
      g[c] = eta * (tilt[c] + eps * (std::log(fc / f_prev[c]) + 1.0));
    }
    const double shift = *std::min_element(g.begin(), g.end());
    double z = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      f[c] *= std::exp(-(g[c] - shift));
      z += f[c];
    }
    for (auto& v : f) v /= z;
  }
  return f;
}

// --- exact CVaR through the minimization form -------------------------------
// For a discrete distribution the minimizing eta is one of the sample
// values, so scanning them evaluates min_eta { eta + E[(x-eta)+]/(1-a) }
// exactly.
inline double cvar_eta_scan(const std::vector<double>& values,
                            const std::vector<double>& weights, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (double eta : values) {
    double tail = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      tail += weights[i] * std::max(0.0, values[i] - eta);
    }
    best = std::min(best, eta + tail / (1.0 - alpha));
  }
  return best;
}

// --- brute-force minimal cut sets -------------------------------------------
inline bool tree_fails(const netres::AttackTree& tree,
                       const std::set<std::string>& failed_nodes,
                       const std::string& id) {
  for (const auto& g : tree.gates) {
    if (g.id != id) continue;
    if (g.kind == netres::AttackTree::GateKind::And) {
      for (const auto& c : g.children) {
        if (!tree_fails(tree, failed_nodes, c)) return false;
      }
      return true;
    }
    for (const auto& c : g.children) {
      if (tree_fails(tree, failed_nodes, c)) return true;
    }
    return false;
  }
  for (const auto& l : tree.leaves) {
    if (l.id == id) return failed_nodes.count(l.node) > 0;
  }
  return false;
}

/// Enumerates all node subsets (<= ~16 distinct nodes) and keeps the
/// inclusion-minimal failing ones.
inline std::vector<std::vector<std::string>> brute_force_min_cuts(
    const netres::AttackTree& tree) {
  std::set<std::string> distinct;
  for (const auto& l : tree.leaves) distinct.insert(l.node);
  std::vector<std::string> nodes(distinct.begin(), distinct.end());
  const std::size_t n = nodes.size();

  std::set<std::uint32_t> failing;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::set<std::string> failed;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) failed.insert(nodes[i]);
    }
    if (tree_fails(tree, failed, tree.root)) failing.insert(mask);
  }

  std::vector<std::vector<std::string>> cuts;
  for (std::uint32_t mask : failing) {
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i) {
      if ((mask & (1u << i)) && failing.count(mask & ~(1u << i))) {
        minimal = false;
      }
    }
    if (!minimal) continue;
    std::vector<std::string> cut;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) cut.push_back(nodes[i]);
    }
    std::sort(cut.begin(), cut.end());
    cuts.push_back(std::move(cut));
  }
  std::sort(cuts.begin(), cuts.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return cuts;
}

}  // namespace oracles
