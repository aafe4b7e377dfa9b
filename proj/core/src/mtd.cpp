#include "netres/mtd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netres/errors.hpp"

namespace netres {

namespace {

void check_simplex(const std::vector<double>& f, const char* what) {
  if (f.empty()) throw std::domain_error(std::string(what) + " is empty");
  double total = 0.0;
  for (double v : f) {
    if (v < 0.0) throw std::domain_error(std::string(what) + " has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error(std::string(what) + " does not sum to 1");
  }
}

std::vector<double> combined_tilt(const std::vector<double>& risk,
                                  const MtdTilt* tilt) {
  std::vector<double> out = risk;
  if (!tilt) return out;
  if (!tilt->cost_to_go.empty()) {
    if (tilt->cost_to_go.size() != risk.size()) {
      throw std::domain_error("cost-to-go table does not cover the config set");
    }
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += tilt->cost_to_go[c];
  }
  if (!tilt->features.empty()) {
    if (tilt->features.size() != risk.size()) {
      throw std::domain_error("feature table does not cover the config set");
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (tilt->features[c].size() != tilt->lambda_dual.size()) {
        throw std::domain_error("feature vector length does not match the duals");
      }
      for (std::size_t j = 0; j < tilt->lambda_dual.size(); ++j) {
        out[c] += tilt->lambda_dual[j] * tilt->features[c][j];
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> mtd_update(const std::vector<double>& f_prev,
                               const std::vector<double>& risk, double epsilon,
                               const MtdTilt* tilt) {
  check_simplex(f_prev, "prior distribution");
  if (risk.size() != f_prev.size()) {
    throw std::domain_error("risk vector does not cover the config set");
  }
  for (double v : f_prev) {
    if (v <= 0.0) throw std::domain_error("prior distribution must have full support");
  }
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");

  const std::vector<double> tilted = combined_tilt(risk, tilt);
  // A constant tilt cancels in the softmax; return the prior untouched so
  // equal-risk updates are exact, not merely within rounding.
  bool constant = true;
  for (double v : tilted) {
    if (v != tilted.front()) {
      constant = false;
      break;
    }
  }
  if (constant) return f_prev;

  // Max-shift the exponents so the normalizer cannot underflow at small eps.
  double best = std::numeric_limits<double>::infinity();
  for (double v : tilted) best = std::min(best, v);

  std::vector<double> f_next(f_prev.size());
  double z = 0.0;
  for (std::size_t c = 0; c < f_prev.size(); ++c) {
    f_next[c] = f_prev[c] * std::exp(-(tilted[c] - best) / epsilon);
    z += f_next[c];
  }
  for (double& v : f_next) v /= z;
  return f_next;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::domain_error("KL over mismatched supports");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

double mtd_objective(const std::vector<double>& f,
                     const std::vector<double>& f_prev,
                     const std::vector<double>& risk, double epsilon,
                     const MtdTilt* tilt) {
  const std::vector<double> tilted = combined_tilt(risk, tilt);
  double value = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) value += f[c] * tilted[c];
  return value + epsilon * kl_divergence(f, f_prev);
}

void MTDState::validate() const {
  std::vector<std::string> problems;
  const int nc = num_configs();
  if (nc < 1) problems.push_back("configuration set is empty");
  if (static_cast<int>(f.size()) != nc) {
    problems.push_back("distribution does not cover the config set");
  }
  if (!(epsilon > 0.0)) problems.push_back("epsilon must be positive");
  if (alpha < 0.0) problems.push_back("surface-shaping weight must be >= 0");
  if (!features.empty()) {
    if (static_cast<int>(features.size()) != nc) {
      problems.push_back("feature table does not cover the config set");
    }
    for (const auto& row : features) {
      if (row.size() != lambda_dual.size()) {
        problems.push_back("feature vector length does not match the dual prices");
        break;
      }
    }
    for (double v : lambda_dual) {
      if (v < 0.0) {
        problems.push_back("dual prices must be >= 0");
        break;
      }
    }
  }
  const int ns = num_surfaces();
  if (ns == 0) {
    if (!transition.empty() || !psi.empty()) {
      problems.push_back("surface data present without a risk table");
    }
  } else {
    if (static_cast<int>(transition.size()) != ns ||
        static_cast<int>(psi.size()) != ns) {
      problems.push_back("transition/psi tables do not cover the surface set");
    }
    if (surface < 0 || surface >= ns) problems.push_back("current surface out of range");
    for (int a = 0; a < ns && a < static_cast<int>(risk_table.size()); ++a) {
      if (static_cast<int>(risk_table[a].size()) != nc) {
        problems.push_back("risk table row " + std::to_string(a) +
                           " does not cover the config set");
      }
    }
    for (int a = 0; a < ns && a < static_cast<int>(transition.size()); ++a) {
      if (static_cast<int>(transition[a].size()) != nc) {
        problems.push_back("transition row " + std::to_string(a) +
                           " does not cover the config set");
      } else {
        for (int c = 0; c < nc; ++c) {
          if (transition[a][c] < 0 || transition[a][c] >= ns) {
            problems.push_back("transition from surface " + std::to_string(a) +
                               " under config " + std::to_string(c) +
                               " leaves the surface set");
          }
        }
      }
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

MtdPlan mtd_plan_horizon(const MTDState& state, int horizon) {
  state.validate();
  if (horizon < 1) throw std::domain_error("planning horizon must be >= 1");
  const MTDState& s = state;
  if (s.num_surfaces() == 0) {
    throw std::domain_error("planning needs a risk table (one row per surface)");
  }
  const int nc = s.num_configs();
  const int ns = s.num_surfaces();

  // Backward sweep over pure configuration choices; W[k][a] is the best
  // rigid-plan cost of stages k..H-1 started from surface a.
  std::vector<std::vector<double>> w(horizon + 1, std::vector<double>(ns, 0.0));
  for (int k = horizon - 1; k >= 0; --k) {
    for (int a = 0; a < ns; ++a) {
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < nc; ++c) {
        double v = s.risk_table[a][c] + s.alpha * s.psi[a] +
                   w[k + 1][s.transition[a][c]];
        best = std::min(best, v);
      }
      w[k][a] = best;
    }
  }

  MtdTilt tilt;
  tilt.features = s.features;
  tilt.lambda_dual = s.lambda_dual;
  tilt.cost_to_go.assign(nc, 0.0);

  MtdPlan plan;
  std::vector<double> f = s.f;
  int surface = s.surface;
  for (int k = 0; k < horizon; ++k) {
    plan.surfaces.push_back(surface);
    for (int c = 0; c < nc; ++c) {
      tilt.cost_to_go[c] = w[k + 1][s.transition[surface][c]];
    }
    std::vector<double> f_next = mtd_update(f, s.risk_table[surface], s.epsilon, &tilt);

    double stage_risk = 0.0;
    for (int c = 0; c < nc; ++c) stage_risk += f_next[c] * s.risk_table[surface][c];
    plan.objective += stage_risk + s.epsilon * kl_divergence(f_next, f) +
                      s.alpha * s.psi[surface];

    // Advance the surface along the most probable configuration.
    int pick = 0;
    for (int c = 1; c < nc; ++c) {
      if (f_next[c] > f_next[pick]) pick = c;
    }
    surface = s.transition[surface][pick];
    plan.distributions.push_back(std::move(f_next));
    f = plan.distributions.back();
  }
  return plan;
}

}  // namespace netres
