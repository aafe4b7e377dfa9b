#pragma once

#include <vector>

namespace netres {

struct WeightedSample {
  double value = 0.0;
  double weight = 0.0;
};

/// Conditional value-at-risk of a discrete distribution at level alpha,
/// i.e. the minimum over eta of eta + E[(X - eta)_+]/(1 - alpha), evaluated
/// exactly by sorting and splitting the atom at the alpha-quantile.
/// Weights must be nonnegative and sum to 1; alpha must lie in [0, 1).
double cvar(std::vector<WeightedSample> samples, double alpha);

/// Equal-weight convenience overload.
double cvar(const std::vector<double>& values, double alpha);

double mean(const std::vector<double>& values);

/// Unbiased sample variance (n - 1 denominator); requires n >= 2.
double sample_variance(const std::vector<double>& values);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Upper-tail p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, int dof);

}  // namespace netres
