#include "netres/fallback.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "netres/errors.hpp"

namespace netres {

namespace {

bool symmetric(const Mat& m, double tol = 1e-9) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * (1.0 + m.cwiseAbs().maxCoeff());
}

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvalues().minCoeff();
}

// Shared fold: Q + A'PA - A'PB (R + B'PB)^{-1} B'PA with a conditioning
// guard on the inner solve.
Mat fold(const Mat& state_cost, const Mat& a, const Mat& b, const Mat& r,
         const Mat& p) {
  const Mat inner = r + b.transpose() * p * b;
  Eigen::SelfAdjointEigenSolver<Mat> es(inner);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0 || hi / lo > 1e12) {
    throw std::runtime_error("lq fold: R + B'PB is ill-conditioned");
  }
  const Mat pa = p * a;
  const Mat cross = b.transpose() * pa;  // B'PA
  Mat pi = state_cost + a.transpose() * pa -
           cross.transpose() * inner.ldlt().solve(cross);
  return 0.5 * (pi + pi.transpose());
}

}  // namespace

void LQFallbackSpec::validate() const {
  std::vector<std::string> problems;
  const int n = state_dim();
  const int m = input_dim();
  if (n < 1) problems.push_back("state dimension must be positive");
  if (m < 1) problems.push_back("input dimension must be positive");
  if (B.rows() != n) problems.push_back("B row count does not match the state dimension");
  if (R.rows() != m || R.cols() != m) problems.push_back("R must be input_dim x input_dim");
  if (R.rows() == R.cols() && R.size() > 0) {
    if (!symmetric(R)) problems.push_back("R must be symmetric");
    else if (min_eigenvalue(R) <= 0.0) problems.push_back("R must be positive definite");
  }
  for (int q = 0; q < 2; ++q) {
    const std::string tag = "mode " + std::to_string(q);
    if (A[q].rows() != n || A[q].cols() != n) problems.push_back(tag + ": A must be n x n");
    for (const auto* mat : {&Q[q], &P[q]}) {
      if (mat->rows() != n || mat->cols() != n) {
        problems.push_back(tag + ": cost matrices must be n x n");
      } else if (!symmetric(*mat)) {
        problems.push_back(tag + ": cost matrices must be symmetric");
      } else if (min_eigenvalue(*mat) < -1e-9) {
        problems.push_back(tag + ": cost matrices must be positive semidefinite");
      }
    }
    if (s[q] < 0.0) problems.push_back(tag + ": service loss must be >= 0");
  }
  if (lambda < 0.0) problems.push_back("switching penalty must be >= 0");
  if (!problems.empty()) throw ValidationError(problems);
}

Mat lq_fold(const LQFallbackSpec& spec, int mode, const Mat& terminal) {
  if (mode != 0 && mode != 1) throw std::invalid_argument("mode must be 0 or 1");
  return fold(spec.Q[mode], spec.A[mode], spec.B, spec.R, terminal);
}

FallbackDecision fallback_decision(const LQFallbackSpec& spec,
                                   const Eigen::VectorXd& x) {
  if (x.size() != spec.state_dim()) {
    throw std::invalid_argument("state dimension does not match the spec");
  }
  FallbackDecision out;
  // Gamma(m): fold Pi(m, P_m) through the current mode-0 stage.
  const Mat pi_stay = lq_fold(spec, 0, spec.P[0]);
  const Mat pi_safe = lq_fold(spec, 1, spec.P[1]);
  out.gamma_stay = fold(spec.Q[0], spec.A[0], spec.B, spec.R, pi_stay);
  out.gamma_switch = fold(spec.Q[0], spec.A[0], spec.B, spec.R, pi_safe);

  const double quad_gap = x.dot((out.gamma_stay - out.gamma_switch) * x);
  const double penalty = spec.lambda + spec.s[1] - spec.s[0];
  out.delta_j = penalty - quad_gap;  // J*_1 - J*_0
  out.switch_to_safe = quad_gap > penalty;
  return out;
}

std::optional<double> scalar_switch_threshold(const LQFallbackSpec& spec) {
  if (spec.state_dim() != 1 || spec.input_dim() != 1) {
    throw std::invalid_argument("scalar threshold needs an all-scalar spec");
  }
  const double alpha = spec.R(0, 0);
  const double a0 = spec.A[0](0, 0);
  const double pi0 = lq_fold(spec, 0, spec.P[0])(0, 0);
  const double pi1 = lq_fold(spec, 1, spec.P[1])(0, 0);
  const double gap = pi0 / (alpha + pi0) - pi1 / (alpha + pi1);
  if (gap <= 0.0) return std::nullopt;  // switching never pays off
  const double numerator = spec.lambda + spec.s[1] - spec.s[0];
  if (numerator <= 0.0) return 0.0;  // switching pays off for every state
  return std::sqrt(numerator / (a0 * a0 * alpha * gap));
}

}  // namespace netres
