#include "netres/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netres {

double cvar(std::vector<WeightedSample> samples, double alpha) {
  if (alpha < 0.0 || alpha >= 1.0) {
    throw std::domain_error("CVaR level must lie in [0, 1)");
  }
  if (samples.empty()) throw std::domain_error("CVaR of an empty sample set");
  double total = 0.0;
  for (const auto& s : samples) {
    if (s.weight < 0.0) throw std::domain_error("CVaR weights must be >= 0");
    total += s.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::domain_error("CVaR weights must sum to 1");
  }

  std::sort(samples.begin(), samples.end(),
            [](const WeightedSample& a, const WeightedSample& b) {
              return a.value > b.value;
            });

  // Average the worst (1 - alpha) probability mass, splitting the quantile
  // atom. Walking down from the top keeps the arithmetic free of the
  // cancellation that accumulating weights up to alpha would suffer near
  // alpha -> 1, so the result is monotone in alpha to rounding accuracy.
  double remaining = 1.0 - alpha;
  double tail = 0.0;
  for (const auto& s : samples) {
    const double take = std::min(remaining, s.weight);
    tail += take * s.value;
    remaining -= take;
    if (remaining <= 0.0) break;
  }
  return tail / (1.0 - alpha);
}

double cvar(const std::vector<double>& values, double alpha) {
  std::vector<WeightedSample> ws;
  ws.reserve(values.size());
  const double w = 1.0 / static_cast<double>(values.size());
  for (double v : values) ws.push_back({v, w});
  return cvar(std::move(ws), alpha);
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::domain_error("mean of an empty sample set");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_variance(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::domain_error("sample variance needs at least two samples");
  }
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size() - 1);
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_p domain");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi_square_pvalue(double statistic, int dof) {
  if (dof < 1) throw std::domain_error("chi-square needs >= 1 degree of freedom");
  if (statistic <= 0.0) return 1.0;
  double p = 1.0 - gamma_p(0.5 * dof, 0.5 * statistic);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace netres
