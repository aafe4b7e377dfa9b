#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "netres/nettheory.hpp"
#include "netres/stats.hpp"

using namespace netres;

namespace {

SpatialNetwork complete_graph(int n) {
  SpatialNetwork net;
  net.side = 1.0;
  net.points.assign(n, {0.0, 0.0});
  net.neighbors.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) net.neighbors[i].push_back(j);
    }
  }
  return net;
}

SpatialNetwork two_cliques(int n) {
  SpatialNetwork net;
  net.side = 1.0;
  net.points.assign(2 * n, {0.0, 0.0});
  net.neighbors.assign(2 * n, {});
  for (int block = 0; block < 2; ++block) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) net.neighbors[block * n + i].push_back(block * n + j);
      }
    }
  }
  return net;
}

}  // namespace

TEST_CASE("sample_rgg: degenerate inputs") {
  auto empty = sample_rgg(0.0, 10.0, 1.0, 1);
  CHECK(empty.num_nodes() == 0);
  CHECK(largest_component_fraction(empty) == 0.0);

  auto loose = sample_rgg(1.0, 10.0, 0.0, 1);
  CHECK(loose.num_edges() == 0);

  auto degenerate = sample_rgg(0.5, 4.0, 3.0, 1);
  CHECK(degenerate.torus_degenerate);

  CHECK_THROWS_AS(sample_rgg(-1.0, 10.0, 1.0, 1), std::domain_error);
}

TEST_CASE("sample_rgg: adjacency symmetric with zero diagonal; seed reproducible") {
  auto net = sample_rgg(1.0, 15.0, 1.2, 77);
  for (int i = 0; i < net.num_nodes(); ++i) {
    for (int j : net.neighbors[i]) {
      CHECK(j != i);
      bool back = false;
      for (int k : net.neighbors[j]) {
        if (k == i) back = true;
      }
      CHECK(back);
      CHECK(torus_distance(net.points[i], net.points[j], net.side) <= net.radius);
    }
  }
  auto again = sample_rgg(1.0, 15.0, 1.2, 77);
  REQUIRE(again.num_nodes() == net.num_nodes());
  CHECK(again.points == net.points);
  CHECK(again.neighbors == net.neighbors);
}

TEST_CASE("sample_rgg: cell-list edges match brute force") {
  auto net = sample_rgg(2.0, 12.0, 0.9, 5);  // enough cells for the stencil
  const double r2 = net.radius * net.radius;
  std::size_t brute = 0;
  for (int i = 0; i < net.num_nodes(); ++i) {
    for (int j = i + 1; j < net.num_nodes(); ++j) {
      const double d = torus_distance(net.points[i], net.points[j], net.side);
      if (d * d <= r2) ++brute;
    }
  }
  CHECK(net.num_edges() == brute);
}

TEST_CASE("degree_stats: empty-edge histogram and the Poisson pmf") {
  auto net = sample_rgg(0.8, 12.0, 0.0, 3);
  auto stats = degree_stats(net);
  REQUIRE(stats.histogram.size() == 1);
  CHECK(stats.histogram[0] == net.num_nodes());
  CHECK(stats.chi_square >= 0.0);

  // pmf at k = 0 with mean pi: e^{-pi} ~ 0.0432.
  auto unit = sample_rgg(1.0, 20.0, 1.0, 3);
  auto ustats = degree_stats(unit);
  CHECK(ustats.theoretical_mean == doctest::Approx(3.14159265358979).epsilon(1e-10));
  CHECK(ustats.poisson_pmf[0] == doctest::Approx(std::exp(-3.14159265358979)).epsilon(1e-9));

  SpatialNetwork none;
  CHECK_THROWS_AS(degree_stats(none), std::domain_error);
}

TEST_CASE("degree_stats: empirical mean near lambda*pi*r^2") {
  auto net = sample_rgg(1.0, 50.0, 1.0, 2025);  // ~2500 expected nodes
  auto stats = degree_stats(net);
  const int n = net.num_nodes();
  // Standard error of the mean degree, Poisson variance ~ mean.
  const double se = std::sqrt(stats.theoretical_mean / n);
  CHECK(std::abs(stats.empirical_mean - stats.theoretical_mean) <= 3.0 * se);
}

TEST_CASE("percolation_scan: saturation in the dense and sparse regimes") {
  // lambda*pi*r^2 = 20 at r ~ 2.523 with lambda = 1.
  const double dense_r = std::sqrt(20.0 / 3.14159265358979);
  const double sparse_r = std::sqrt(0.1 / 3.14159265358979);
  auto scan = percolation_scan(PercolationScan::Vary::Radius,
                               {sparse_r, dense_r}, 1.0, 30.0, 8, 12);
  CHECK(scan.curve[0].mean_fraction <= 0.1);
  CHECK(scan.curve[1].mean_fraction >= 0.99);
  CHECK(scan.bracketed);
  REQUIRE(scan.threshold.has_value());
  CHECK(*scan.threshold > sparse_r);
  CHECK(*scan.threshold < dense_r);
}

TEST_CASE("percolation_scan: curve statistically nondecreasing under CRN") {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(0.2 + 0.25 * i);
  auto scan = percolation_scan(PercolationScan::Vary::Radius, grid, 1.0, 20.0,
                               10, 99);
  for (std::size_t i = 0; i + 1 < scan.curve.size(); ++i) {
    const double slack =
        2.0 * (scan.curve[i].std_error + scan.curve[i + 1].std_error);
    CHECK(scan.curve[i + 1].mean_fraction >=
          scan.curve[i].mean_fraction - slack - 1e-12);
  }
}

TEST_CASE("percolation_scan: intensity thinning variant and bracket flag") {
  std::vector<double> grid{0.05, 0.2, 0.8, 2.0};
  auto scan = percolation_scan(PercolationScan::Vary::Intensity, grid, 1.0,
                               20.0, 6, 4);
  CHECK(scan.curve.size() == 4);
  for (const auto& pt : scan.curve) {
    CHECK(pt.mean_fraction >= 0.0);
    CHECK(pt.mean_fraction <= 1.0);
  }

  auto flat = percolation_scan(PercolationScan::Vary::Radius, {3.0, 3.5}, 1.0,
                               20.0, 4, 4);
  CHECK_FALSE(flat.bracketed);  // both points deep in the supercritical phase
  CHECK_FALSE(flat.threshold.has_value());
}

TEST_CASE("sis_simulate: pure recovery decays geometrically") {
  auto net = complete_graph(6);
  EpidemicModel m;
  m.beta = 0.0;
  m.mu = 1.0;
  m.dt = 0.1;
  std::vector<double> init(6, 0.5);
  auto result = sis_simulate(net, m, init, 20);
  for (int t = 0; t <= 20; ++t) {
    CHECK(result.infected_fraction[t] ==
          doctest::Approx(0.5 * std::pow(0.9, t)).epsilon(1e-9));
  }
}

TEST_CASE("sis_simulate: no recovery means nondecreasing infection") {
  auto net = complete_graph(5);
  EpidemicModel m;
  m.beta = 0.02;
  m.mu = 0.0;
  m.dt = 0.5;
  std::vector<double> init(5, 0.0);
  init[0] = 0.3;
  auto result = sis_simulate(net, m, init, 50);
  for (std::size_t t = 1; t < result.infected_fraction.size(); ++t) {
    CHECK(result.infected_fraction[t] >= result.infected_fraction[t - 1] - 1e-12);
  }
}

TEST_CASE("sis_simulate: subcritical K10 dies out, supercritical persists") {
  auto net = complete_graph(10);
  std::vector<double> init(10, 0.1);

  EpidemicModel sub;
  sub.beta = 0.05;
  sub.mu = 1.0;
  sub.dt = 0.1;
  auto dead = sis_simulate(net, sub, init, 500);
  CHECK(dead.infected_fraction.back() < 1e-3);

  EpidemicModel super;
  super.beta = 0.5;
  super.mu = 1.0;
  super.dt = 0.1;
  auto endemic = sis_simulate(net, super, init, 500);
  CHECK(endemic.infected_fraction.back() > 0.01);
}

TEST_CASE("sis_simulate: probabilities clamped, stability guard enforced") {
  auto net = complete_graph(8);
  EpidemicModel m;
  m.beta = 0.12;
  m.mu = 0.5;
  m.dt = 0.5;  // 0.5 * (0.5 + 0.12*7) = 0.67 <= 1
  std::vector<double> init(8, 0.9);
  auto result = sis_simulate(net, m, init, 100);
  for (double v : result.final_state) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  EpidemicModel unstable;
  unstable.beta = 1.0;
  unstable.mu = 1.0;
  unstable.dt = 0.5;  // 0.5 * (1 + 7) = 4 > 1
  CHECK_THROWS_AS(sis_simulate(net, unstable, init, 10), std::domain_error);

  std::vector<double> bad(8, 1.5);
  CHECK_THROWS_AS(sis_simulate(net, m, bad, 10), std::domain_error);
}

TEST_CASE("stability_indicators: complete-graph spectrum and verdicts") {
  for (int n : {5, 10, 23}) {
    auto net = complete_graph(n);
    auto ind = stability_indicators(net, 0.05, 1.0);
    CHECK(ind.spectral_radius == doctest::Approx(n - 1.0).epsilon(1e-8));
    CHECK(ind.connected);
    CHECK(ind.algebraic_connectivity == doctest::Approx(static_cast<double>(n)).epsilon(1e-8));
    CHECK(ind.mean_degree == doctest::Approx(n - 1.0));
    CHECK(ind.r0 == doctest::Approx(0.05 * (n - 1.0)));
  }

  auto k10 = complete_graph(10);
  CHECK(stability_indicators(k10, 0.05, 1.0).subcritical);   // 0.05 < 1/9
  CHECK_FALSE(stability_indicators(k10, 0.5, 1.0).subcritical);
}

TEST_CASE("stability_indicators: disconnected graphs have lambda2 exactly zero") {
  auto net = two_cliques(4);
  auto ind = stability_indicators(net, 0.1, 1.0);
  CHECK_FALSE(ind.connected);
  CHECK(ind.algebraic_connectivity == 0.0);

  // Cross-check the spectral characterization against traversal on a
  // connected instance.
  auto whole = complete_graph(7);
  auto ind2 = stability_indicators(whole, 0.1, 1.0);
  CHECK(ind2.connected == (ind2.algebraic_connectivity > 0.0));
}

TEST_CASE("spectral verdicts predict SIS outcomes on sampled graphs") {
  // Battery across seeds: the spectral threshold must agree with the
  // simulated epidemic on the very same graph.
  for (std::uint64_t seed : {3u, 14u, 159u, 2653u}) {
    auto net = sample_rgg(1.4, 12.0, 1.0, seed);
    if (net.num_nodes() < 10) continue;
    auto probe = stability_indicators(net, 1.0, 1.0);
    if (probe.spectral_radius <= 0.0) continue;
    const double rho = probe.spectral_radius;
    int max_degree = 0;
    for (const auto& adj : net.neighbors) {
      max_degree = std::max(max_degree, static_cast<int>(adj.size()));
    }
    std::vector<double> init(net.num_nodes(), 0.2);

    // Just inside the subcritical region.
    const double beta_sub = 0.5 / rho;
    auto sub = stability_indicators(net, beta_sub, 1.0);
    CHECK(sub.subcritical);
    EpidemicModel m_sub{beta_sub, 1.0, 0.9 / (1.0 + beta_sub * max_degree)};
    auto dead = sis_simulate(net, m_sub, init, 500);
    CHECK(dead.infected_fraction.back() < 1e-3);

    // Well past the threshold: self-sustaining propagation.
    const double beta_super = 3.0 / rho;
    auto super = stability_indicators(net, beta_super, 1.0);
    CHECK_FALSE(super.subcritical);
    EpidemicModel m_super{beta_super, 1.0, 0.9 / (1.0 + beta_super * max_degree)};
    auto endemic = sis_simulate(net, m_super, init, 2000);
    CHECK(endemic.infected_fraction.back() > 0.01);
  }
}

TEST_CASE("stability_indicators: preconditions") {
  SpatialNetwork empty;
  CHECK_THROWS_AS(stability_indicators(empty, 0.1, 1.0), std::domain_error);
  auto net = complete_graph(3);
  CHECK_THROWS_AS(stability_indicators(net, 0.1, 0.0), std::domain_error);
}
