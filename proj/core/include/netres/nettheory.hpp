#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace netres {

/// Random geometric graph sampled from a Poisson point process on a square
/// torus (periodic metric, so the lambda*pi*r^2 mean-degree law holds
/// without boundary corrections).
struct SpatialNetwork {
  double intensity = 0.0;  // nodes per unit area
  double side = 1.0;
  double radius = 0.0;
  bool torus_degenerate = false;  // radius > side/2
  std::vector<std::array<double, 2>> points;
  std::vector<std::vector<int>> neighbors;  // sorted adjacency lists

  int num_nodes() const { return static_cast<int>(points.size()); }
  std::size_t num_edges() const;
  std::vector<int> degrees() const;
  double expected_mean_degree() const;  // lambda * pi * radius^2
};

SpatialNetwork sample_rgg(double intensity, double side, double radius,
                          std::uint64_t seed, std::uint64_t stream = 0);

/// Torus (wrap-around) distance on the square of the given side.
double torus_distance(const std::array<double, 2>& a,
                      const std::array<double, 2>& b, double side);

/// Fraction of nodes in the largest connected component; 0 for an empty graph.
double largest_component_fraction(const SpatialNetwork& net);
bool is_connected(const SpatialNetwork& net);

struct DegreeStats {
  std::vector<int> histogram;        // index k -> node count with degree k
  double empirical_mean = 0.0;
  double theoretical_mean = 0.0;     // lambda * pi * r^2
  std::vector<double> poisson_pmf;   // theoretical pmf over histogram range
  double chi_square = 0.0;           // goodness-of-fit statistic, merged bins
  int dof = 0;
  double p_value = 1.0;
};
DegreeStats degree_stats(const SpatialNetwork& net);

struct PercolationPoint {
  double param = 0.0;
  double mean_fraction = 0.0;
  double std_error = 0.0;
};
struct PercolationScan {
  enum class Vary { Radius, Intensity };
  std::vector<PercolationPoint> curve;
  std::optional<double> threshold;  // first 0.5 crossing, interpolated
  bool bracketed = false;
};

/// Largest-component curve along an ascending parameter grid, with common
/// random numbers across grid points (shared points for radius scans,
/// thinning for intensity scans) so the curve is monotone up to noise.
PercolationScan percolation_scan(PercolationScan::Vary vary,
                                 const std::vector<double>& grid,
                                 double fixed_value, double side, int samples,
                                 std::uint64_t seed);

struct EpidemicModel {
  double beta = 0.0;  // transmission rate
  double mu = 0.0;    // recovery rate
  double dt = 0.1;
};

struct SisResult {
  std::vector<double> infected_fraction;  // I(0..T)
  std::vector<double> final_state;        // per-node probabilities at T
};

/// Discrete-time per-node mean-field SIS:
///   s_v += dt * (-mu s_v + beta (1 - s_v) sum_u A_vu s_u),
/// clamped to [0,1]. The explicit Euler step requires
/// dt * (mu + beta * max_degree) <= 1; violations raise std::domain_error.
SisResult sis_simulate(const SpatialNetwork& net, const EpidemicModel& model,
                       const std::vector<double>& initial, int horizon);

struct StabilityIndicators {
  double spectral_radius = 0.0;        // rho(A), power iteration
  double algebraic_connectivity = 0.0; // lambda_2 of the Laplacian
  double mean_degree = 0.0;
  double r0 = 0.0;                     // beta * E[K] / mu
  bool subcritical = false;            // beta/mu < 1/rho(A)
  bool connected = false;
  int power_iterations = 0;
};

/// Spectral threshold indicators. lambda_2 is exactly 0 for graphs a
/// traversal shows disconnected; otherwise it comes from a full symmetric
/// eigendecomposition (guarded at 5000 nodes).
StabilityIndicators stability_indicators(const SpatialNetwork& net, double beta,
                                         double mu);

}  // namespace netres
