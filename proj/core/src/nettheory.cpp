#include "netres/nettheory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "netres/rng.hpp"
#include "netres/stats.hpp"

namespace netres {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::size_t SpatialNetwork::num_edges() const {
  std::size_t twice = 0;
  for (const auto& adj : neighbors) twice += adj.size();
  return twice / 2;
}

std::vector<int> SpatialNetwork::degrees() const {
  std::vector<int> d;
  d.reserve(neighbors.size());
  for (const auto& adj : neighbors) d.push_back(static_cast<int>(adj.size()));
  return d;
}

double SpatialNetwork::expected_mean_degree() const {
  return intensity * kPi * radius * radius;
}

double torus_distance(const std::array<double, 2>& a,
                      const std::array<double, 2>& b, double side) {
  double dx = std::abs(a[0] - b[0]);
  double dy = std::abs(a[1] - b[1]);
  dx = std::min(dx, side - dx);
  dy = std::min(dy, side - dy);
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

void build_edges(SpatialNetwork& net) {
  const int n = net.num_nodes();
  net.neighbors.assign(n, {});
  if (net.radius <= 0.0 || n < 2) return;
  const double r2 = net.radius * net.radius;
  const double side = net.side;

  auto torus_d2 = [side](const std::array<double, 2>& a,
                         const std::array<double, 2>& b) {
    double dx = std::abs(a[0] - b[0]);
    double dy = std::abs(a[1] - b[1]);
    dx = std::min(dx, side - dx);
    dy = std::min(dy, side - dy);
    return dx * dx + dy * dy;
  };

  const int cells = static_cast<int>(side / net.radius);
  if (cells < 4) {
    // Too few cells for the 3x3 stencil to be exact; brute force.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (torus_d2(net.points[i], net.points[j]) <= r2) {
          net.neighbors[i].push_back(j);
          net.neighbors[j].push_back(i);
        }
      }
    }
    return;
  }

  const double cell_w = side / cells;
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(cells) * cells);
  auto cell_of = [&](const std::array<double, 2>& p) {
    int cx = std::min(cells - 1, static_cast<int>(p[0] / cell_w));
    int cy = std::min(cells - 1, static_cast<int>(p[1] / cell_w));
    return cy * cells + cx;
  };
  for (int i = 0; i < n; ++i) grid[cell_of(net.points[i])].push_back(i);

  for (int cy = 0; cy < cells; ++cy) {
    for (int cx = 0; cx < cells; ++cx) {
      const auto& here = grid[cy * cells + cx];
      if (here.empty()) continue;
      for (int oy = -1; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
          const int ny = (cy + oy + cells) % cells;
          const int nx = (cx + ox + cells) % cells;
          const auto& there = grid[ny * cells + nx];
          for (int i : here) {
            for (int j : there) {
              if (j <= i) continue;
              if (torus_d2(net.points[i], net.points[j]) <= r2) {
                net.neighbors[i].push_back(j);
                net.neighbors[j].push_back(i);
              }
            }
          }
        }
      }
    }
  }
  for (auto& adj : net.neighbors) std::sort(adj.begin(), adj.end());
}

}  // namespace

SpatialNetwork sample_rgg(double intensity, double side, double radius,
                          std::uint64_t seed, std::uint64_t stream) {
  if (intensity < 0.0 || side <= 0.0 || radius < 0.0) {
    throw std::domain_error("RGG needs intensity >= 0, side > 0, radius >= 0");
  }
  SpatialNetwork net;
  net.intensity = intensity;
  net.side = side;
  net.radius = radius;
  net.torus_degenerate = radius > side / 2.0;

  RngStream rng(seed, stream);
  rng.seek(0);
  const std::uint64_t n = rng.poisson(intensity * side * side);
  net.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    net.points.push_back({rng.uniform(0.0, side), rng.uniform(0.0, side)});
  }
  build_edges(net);
  return net;
}

double largest_component_fraction(const SpatialNetwork& net) {
  const int n = net.num_nodes();
  if (n == 0) return 0.0;
  std::vector<int> label(n, -1);
  int best = 0;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    int size = 0;
    stack.push_back(start);
    label[start] = start;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++size;
      for (int u : net.neighbors[v]) {
        if (label[u] < 0) {
          label[u] = start;
          stack.push_back(u);
        }
      }
    }
    best = std::max(best, size);
  }
  return static_cast<double>(best) / n;
}

bool is_connected(const SpatialNetwork& net) {
  if (net.num_nodes() == 0) return false;
  return largest_component_fraction(net) == 1.0;
}

namespace {

// Chi-square of integer counts against Poisson(mean) with greedy bin
// merging so every expected count reaches 5; the last bin absorbs the
// analytic upper tail.
void poisson_chi_square(const std::vector<int>& counts, double mean_rate,
                        double* statistic, int* dof) {
  const int n = static_cast<int>(counts.size());
  int k_max = 0;
  for (int c : counts) k_max = std::max(k_max, c);
  std::vector<int> hist(k_max + 1, 0);
  for (int c : counts) ++hist[c];

  std::vector<double> pmf(k_max + 1);
  double p = std::exp(-mean_rate);
  for (int k = 0; k <= k_max; ++k) {
    pmf[k] = p;
    p *= mean_rate / (k + 1);
  }

  std::vector<double> expected;
  std::vector<double> observed;
  double exp_acc = 0.0;
  double obs_acc = 0.0;
  double cdf = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    exp_acc += n * pmf[k];
    obs_acc += hist[k];
    cdf += pmf[k];
    if (exp_acc >= 5.0) {
      expected.push_back(exp_acc);
      observed.push_back(obs_acc);
      exp_acc = 0.0;
      obs_acc = 0.0;
    }
  }
  const double tail = n * std::max(0.0, 1.0 - cdf);
  if (!expected.empty()) {
    expected.back() += exp_acc + tail;
    observed.back() += obs_acc;
  } else {
    expected.push_back(exp_acc + tail);
    observed.push_back(obs_acc);
  }

  *statistic = 0.0;
  for (std::size_t b = 0; b < expected.size(); ++b) {
    const double diff = observed[b] - expected[b];
    *statistic += diff * diff / expected[b];
  }
  *dof = static_cast<int>(expected.size()) - 1;
}

}  // namespace

DegreeStats degree_stats(const SpatialNetwork& net) {
  const int n = net.num_nodes();
  if (n == 0) throw std::domain_error("degree statistics need a nonempty network");

  DegreeStats out;
  const auto deg = net.degrees();
  const int k_max = *std::max_element(deg.begin(), deg.end());
  out.histogram.assign(k_max + 1, 0);
  double total = 0.0;
  for (int k : deg) {
    ++out.histogram[k];
    total += k;
  }
  out.empirical_mean = total / n;
  out.theoretical_mean = net.expected_mean_degree();

  const double m = out.theoretical_mean;
  out.poisson_pmf.resize(k_max + 1);
  double pmf = std::exp(-m);  // k = 0
  for (int k = 0; k <= k_max; ++k) {
    out.poisson_pmf[k] = pmf;
    pmf *= m / (k + 1);
  }

  // Node degrees share edges and are pairwise correlated, which inflates a
  // chi-square computed on them well past its nominal level. The counts in
  // balls around a fixed probe grid follow the same Poisson law (that is
  // the Palm view of the typical degree) and, with probes farther than 2r
  // apart, are genuinely independent, so the test statistic is computed on
  // those. Degenerate geometries fall back to the node degrees.
  std::vector<int> samples;
  const double spacing = 2.5 * net.radius;
  const int per_axis =
      net.radius > 0.0
          ? std::min(64, static_cast<int>(net.side / spacing))
          : 0;
  if (per_axis >= 2) {
    const double step = net.side / per_axis;
    const double r2 = net.radius * net.radius;
    samples.reserve(static_cast<std::size_t>(per_axis) * per_axis);
    for (int i = 0; i < per_axis; ++i) {
      for (int j = 0; j < per_axis; ++j) {
        const std::array<double, 2> probe{(i + 0.5) * step, (j + 0.5) * step};
        int count = 0;
        for (const auto& pt : net.points) {
          const double dx0 = std::abs(probe[0] - pt[0]);
          const double dy0 = std::abs(probe[1] - pt[1]);
          const double dx = std::min(dx0, net.side - dx0);
          const double dy = std::min(dy0, net.side - dy0);
          if (dx * dx + dy * dy <= r2) ++count;
        }
        samples.push_back(count);
      }
    }
  } else {
    samples = deg;
  }
  poisson_chi_square(samples, m, &out.chi_square, &out.dof);
  out.p_value = out.dof >= 1 ? chi_square_pvalue(out.chi_square, out.dof) : 1.0;
  return out;
}

PercolationScan percolation_scan(PercolationScan::Vary vary,
                                 const std::vector<double>& grid,
                                 double fixed_value, double side, int samples,
                                 std::uint64_t seed) {
  if (grid.empty()) throw std::domain_error("percolation grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::domain_error("percolation grid must be sorted ascending");
  }
  if (samples < 1) throw std::domain_error("need at least one sample per grid point");

  const std::size_t g = grid.size();
  std::vector<std::vector<double>> fractions(g);

  for (int k = 0; k < samples; ++k) {
    if (vary == PercolationScan::Vary::Radius) {
      // One point set per sample, reused across radii (monotone coupling).
      SpatialNetwork base = sample_rgg(fixed_value, side, 0.0, seed, 2ull * k);
      for (std::size_t i = 0; i < g; ++i) {
        base.radius = grid[i];
        base.torus_degenerate = grid[i] > side / 2.0;
        build_edges(base);
        fractions[i].push_back(largest_component_fraction(base));
      }
    } else {
      // Thinning coupling: sample at the densest intensity, then keep each
      // point below the acceptance ratio.
      const double lambda_max = grid.back();
      SpatialNetwork dense = sample_rgg(lambda_max, side, fixed_value, seed, 2ull * k);
      RngStream keep_rng(seed, 2ull * k + 1);
      keep_rng.seek(0);
      std::vector<double> u(dense.points.size());
      for (auto& v : u) v = keep_rng.next_double();
      for (std::size_t i = 0; i < g; ++i) {
        const double ratio = lambda_max > 0.0 ? grid[i] / lambda_max : 0.0;
        SpatialNetwork thin;
        thin.intensity = grid[i];
        thin.side = side;
        thin.radius = fixed_value;
        thin.torus_degenerate = fixed_value > side / 2.0;
        for (std::size_t p = 0; p < dense.points.size(); ++p) {
          if (u[p] < ratio) thin.points.push_back(dense.points[p]);
        }
        build_edges(thin);
        fractions[i].push_back(largest_component_fraction(thin));
      }
    }
  }

  PercolationScan out;
  for (std::size_t i = 0; i < g; ++i) {
    PercolationPoint pt;
    pt.param = grid[i];
    pt.mean_fraction = mean(fractions[i]);
    pt.std_error = samples > 1
                       ? std::sqrt(sample_variance(fractions[i]) / samples)
                       : 0.0;
    out.curve.push_back(pt);
  }

  for (std::size_t i = 0; i + 1 < g; ++i) {
    const double a = out.curve[i].mean_fraction;
    const double b = out.curve[i + 1].mean_fraction;
    if (a < 0.5 && b >= 0.5) {
      const double t = (0.5 - a) / (b - a);
      out.threshold = grid[i] + t * (grid[i + 1] - grid[i]);
      out.bracketed = true;
      break;
    }
  }
  return out;
}

SisResult sis_simulate(const SpatialNetwork& net, const EpidemicModel& model,
                       const std::vector<double>& initial, int horizon) {
  const int n = net.num_nodes();
  if (static_cast<int>(initial.size()) != n) {
    throw std::domain_error("initial infection vector does not cover the nodes");
  }
  if (model.beta < 0.0 || model.mu < 0.0 || model.dt <= 0.0) {
    throw std::domain_error("SIS rates must be >= 0 with a positive step");
  }
  int max_degree = 0;
  for (const auto& adj : net.neighbors) {
    max_degree = std::max(max_degree, static_cast<int>(adj.size()));
  }
  if (model.dt * (model.mu + model.beta * max_degree) > 1.0 + 1e-12) {
    throw std::domain_error(
        "unstable Euler step: dt * (mu + beta * max_degree) exceeds 1");
  }
  for (double v : initial) {
    if (v < 0.0 || v > 1.0) {
      throw std::domain_error("infection probabilities must lie in [0, 1]");
    }
  }

  SisResult out;
  std::vector<double> s = initial;
  std::vector<double> next(n, 0.0);
  auto record = [&]() {
    double acc = 0.0;
    for (double v : s) acc += v;
    out.infected_fraction.push_back(n > 0 ? acc / n : 0.0);
  };
  record();
  for (int t = 0; t < horizon; ++t) {
    for (int v = 0; v < n; ++v) {
      double pressure = 0.0;
      for (int u : net.neighbors[v]) pressure += s[u];
      double dv = -model.mu * s[v] + model.beta * (1.0 - s[v]) * pressure;
      next[v] = std::clamp(s[v] + model.dt * dv, 0.0, 1.0);
    }
    s.swap(next);
    record();
  }
  out.final_state = std::move(s);
  return out;
}

StabilityIndicators stability_indicators(const SpatialNetwork& net, double beta,
                                         double mu) {
  const int n = net.num_nodes();
  if (n == 0) throw std::domain_error("indicators need a nonempty network");
  if (mu <= 0.0) throw std::domain_error("recovery rate must be positive for R0");

  StabilityIndicators out;
  out.mean_degree = 2.0 * static_cast<double>(net.num_edges()) / n;
  out.r0 = beta * out.mean_degree / mu;
  out.connected = is_connected(net);

  // Spectral radius by power iteration on A + I (the shift separates the
  // dominant eigenvalue from a possible -rho partner on bipartite parts).
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-6 * (i + 1) / n;
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (double& x : v) x /= norm;

  std::vector<double> av(n, 0.0);
  double lambda = 0.0;
  bool converged = false;
  const int cap = 200000;
  for (int it = 0; it < cap; ++it) {
    for (int i = 0; i < n; ++i) {
      double acc = v[i];  // the +I shift
      for (int u : net.neighbors[i]) acc += v[u];
      av[i] = acc;
    }
    double rayleigh = std::inner_product(v.begin(), v.end(), av.begin(), 0.0);
    double av_norm = std::sqrt(std::inner_product(av.begin(), av.end(), av.begin(), 0.0));
    if (av_norm == 0.0) {
      rayleigh = 0.0;
      converged = true;
      out.power_iterations = it + 1;
      lambda = 0.0;
      break;
    }
    for (int i = 0; i < n; ++i) v[i] = av[i] / av_norm;
    out.power_iterations = it + 1;
    if (it > 0 && std::abs(rayleigh - lambda) <= 1e-9 * std::max(1.0, std::abs(rayleigh))) {
      lambda = rayleigh;
      converged = true;
      break;
    }
    lambda = rayleigh;
  }
  if (!converged) {
    throw std::runtime_error(
        "power iteration did not converge; partial spectral radius estimate " +
        std::to_string(lambda - 1.0));
  }
  out.spectral_radius = std::max(0.0, lambda - 1.0);

  if (!out.connected || n == 1) {
    out.algebraic_connectivity = 0.0;  // spectral characterization, exact
  } else {
    if (n > 5000) {
      throw std::domain_error("dense eigendecomposition guarded at 5000 nodes");
    }
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      lap(i, i) = static_cast<double>(net.neighbors[i].size());
      for (int u : net.neighbors[i]) lap(i, u) = -1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    out.algebraic_connectivity = std::max(0.0, es.eigenvalues()(1));
  }

  out.subcritical = beta / mu < 1.0 / std::max(out.spectral_radius, 1e-300);
  return out;
}

}  // namespace netres
