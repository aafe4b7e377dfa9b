#pragma once

#include <string>
#include <vector>

namespace netres {

/// Optional terms added to the stage risk before the exponential tilt:
/// dual prices on per-configuration resource/QoS features, plus a
/// cost-to-go credit per configuration. Any empty member contributes zero.
struct MtdTilt {
  std::vector<std::vector<double>> features;  // phi(c) >= 0 per config
  std::vector<double> lambda_dual;            // shadow prices, >= 0
  std::vector<double> cost_to_go;             // Q^ctg(c) per config
};

/// KL-regularized reconfiguration update over a finite configuration set:
///   f_next(c) ~ f_prev(c) * exp(-[r(c) + lambda'phi(c) + Qctg(c)] / eps),
/// normalized. Exponents are max-shifted so small eps cannot underflow the
/// normalizer. f_prev must be a full-support simplex element.
std::vector<double> mtd_update(const std::vector<double>& f_prev,
                               const std::vector<double>& risk, double epsilon,
                               const MtdTilt* tilt = nullptr);

/// E_f[risk] + eps * KL(f || f_prev): the objective minimized by mtd_update.
double mtd_objective(const std::vector<double>& f,
                     const std::vector<double>& f_prev,
                     const std::vector<double>& risk, double epsilon,
                     const MtdTilt* tilt = nullptr);

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

/// Planning state for the moving-horizon problem: configuration risks may
/// depend on the current attack-surface state, which evolves under the
/// chosen configuration via the transition map.
struct MTDState {
  std::vector<std::string> configs;
  std::vector<double> f;                        // current distribution
  double epsilon = 1.0;
  double alpha = 0.0;                           // surface-shaping weight
  std::vector<std::vector<double>> features;    // phi(c), optional
  std::vector<double> lambda_dual;              // optional
  // Surface-transition graph; a static-surface problem uses one risk row
  // with self-transitions and psi = {0}.
  std::vector<std::vector<double>> risk_table;  // risk[surface][config]
  std::vector<std::vector<int>> transition;     // g[surface][config] -> surface
  std::vector<double> psi;                      // shaping per surface
  int surface = 0;

  int num_configs() const { return static_cast<int>(configs.size()); }
  int num_surfaces() const { return static_cast<int>(risk_table.size()); }
  void validate() const;
};

struct MtdPlan {
  std::vector<std::vector<double>> distributions;  // f_1 .. f_H
  std::vector<int> surfaces;                       // A_0 .. A_{H-1}
  double objective = 0.0;  // sum of stage risk + eps*KL churn + alpha*psi
};

/// Moving-horizon plan: cost-to-go per configuration is computed by a
/// backward sweep over the surface-transition graph (pure-configuration
/// dynamic program), then each stage applies the tilted update forward.
/// The surface advances along the most probable configuration, lowest
/// index on ties.
MtdPlan mtd_plan_horizon(const MTDState& state, int horizon);

}  // namespace netres
