#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

namespace netres {

using Mat = Eigen::MatrixXd;

/// Two-mode LQ fallback problem: mode 0 is the abnormal regime the system
/// currently occupies, mode 1 the safe-but-degraded regime reachable by a
/// one-shot irreversible switch. Costs are mode-dependent; B and R are
/// shared; `lambda` is charged once on switching; s[m] is the per-stage
/// service-loss constant of mode m.
struct LQFallbackSpec {
  std::array<Mat, 2> A;
  std::array<Mat, 2> Q;  // state cost, PSD
  std::array<Mat, 2> P;  // terminal cost, PSD
  Mat B;
  Mat R;                 // input cost, PD
  std::array<double, 2> s{0.0, 0.0};
  double lambda = 0.0;

  int state_dim() const { return static_cast<int>(A[0].rows()); }
  int input_dim() const { return static_cast<int>(B.cols()); }

  /// Throws ValidationError listing every violated shape/definiteness rule.
  void validate() const;
};

/// One-step minimized quadratic coefficient under mode m with terminal
/// weight P:
///   Pi = Q_m + A_m' P A_m - A_m' P B (R + B' P B)^{-1} B' P A_m.
/// Throws std::runtime_error if R + B'PB is ill-conditioned (condition
/// number beyond 1e12), which cannot happen for valid specs.
Mat lq_fold(const LQFallbackSpec& spec, int mode, const Mat& terminal);

struct FallbackDecision {
  bool switch_to_safe = false;
  double delta_j = 0.0;  // J*_switch - J*_stay; negative favors switching
  Mat gamma_stay;        // Gamma(0)
  Mat gamma_switch;      // Gamma(1)
};

/// Two-stage commit-and-optimize comparison from the current (abnormal)
/// mode: switching is optimal iff
///   x' (Gamma(0) - Gamma(1)) x > lambda + (s_1 - s_0).
FallbackDecision fallback_decision(const LQFallbackSpec& spec,
                                   const Eigen::VectorXd& x);

/// Closed-form |x| switching threshold for all-scalar specs; nullopt when
/// the mode-cost gap is nonpositive and no finite threshold exists.
std::optional<double> scalar_switch_threshold(const LQFallbackSpec& spec);

}  // namespace netres
