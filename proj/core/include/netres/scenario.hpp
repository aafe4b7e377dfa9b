#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netres/fallback.hpp"
#include "netres/games.hpp"
#include "netres/metrics.hpp"
#include "netres/models.hpp"
#include "netres/mpc.hpp"
#include "netres/mtd.hpp"
#include "netres/nettheory.hpp"
#include "netres/qlearn.hpp"
#include "netres/riskgraph.hpp"
#include "netres/trajectory.hpp"
#include "netres/twin.hpp"

namespace netres {

enum class ExperimentKind {
  Rollout,
  Metrics,
  Fallback,
  Mtd,
  Mpc,
  Game,
  Pra,
  Strategic,
  Riskgraph,
  Net,
};

const std::vector<std::string>& experiment_kind_names();
std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);

struct RolloutBlock {
  DynamicsModel model;
  HybridState initial;
  int horizon = 1;
  Policy defender;
  AttackerProcess attacker;
  NaturalProcess natural;
  double delta = 0.8;  // threshold echoed into plot tables
};

struct MetricsBlock {
  // Either an inline performance series or a rollout that generates one.
  std::vector<double> q;
  double q_max = 1.0;
  std::optional<RolloutBlock> from_rollout;
  std::vector<SliceSeries> slices;  // cross-slice series for SII
  std::vector<double> latency;
  std::vector<DisruptionEvent> events;
  bool auto_detect_events = false;
  MetricsConfig cfg;
  Window window;
  int disrupted_slice = 0;
  std::vector<std::pair<std::string, double>> composite;  // metric -> weight
  std::vector<double> cost;                               // over the window
  std::vector<double> allocated;                          // autoscaling series
  std::vector<double> optimal;
};

struct FallbackBlock {
  LQFallbackSpec spec;
  std::vector<Eigen::VectorXd> states;  // evaluate the rule at each
};

struct MtdBlock {
  MTDState state;
  int horizon = 1;
};

struct MpcBlock {
  DynamicsModel model;
  HybridState initial;
  std::vector<Vec> actions;
  int horizon = 1;
  int samples = 1;
  int steps = 1;  // closed-loop applications of the first action
  MpcObjective objective;
  MpcCosts costs;
  AttackerProcess attacker;
  NaturalProcess natural;
};

struct GameBlock {
  StochasticGame game;
  double tolerance = 1e-10;
  int max_iterations = 10000;
  bool run_worst_case = false;
  // Worst case runs against the equilibrium defender unless a fixed policy
  // is supplied.
  std::optional<std::vector<std::vector<double>>> worst_case_defender;
  bool run_qlearning = false;
  QLearningParams qlearn;
  std::string qlearn_attacker = "equilibrium";  // or "uniform"
};

struct PraBlock {
  DynamicsModel twin_model;
  Policy policy;
  ScenarioSet scenarios;
  NaturalProcess natural;
  int samples = 1;
  double alpha = 0.0;
};

struct StrategicBlock {
  StochasticGame game;
  StrategicMode mode = StrategicMode::Equilibrium;
  DynamicsModel twin_model;
  GameEmbedding embedding;
  ScenarioSet scenarios;
  NaturalProcess natural;
  int samples = 1;
  double alpha = 0.0;
};

struct RiskgraphBlock {
  SystemGraph graph;
  AttackTree tree;
  RiskVector risk;
  int top_k = 5;
  bool exact = true;  // attempt the enumeration oracle when small enough
};

struct NetBlock {
  double intensity = 1.0;
  double side = 10.0;
  double radius = 1.0;
  bool degree = true;
  bool export_edges = false;
  struct Percolation {
    PercolationScan::Vary vary = PercolationScan::Vary::Radius;
    std::vector<double> grid;
    int samples = 10;
  };
  std::optional<Percolation> percolation;
  struct Sis {
    EpidemicModel model;
    double initial_fraction = 0.1;
    int horizon = 100;
  };
  std::optional<Sis> sis;
  struct Indicators {
    double beta = 0.0;
    double mu = 1.0;
  };
  std::optional<Indicators> indicators;
};

/// One experiment per file: exactly one kind block is engaged.
struct ScenarioFile {
  std::string version = "1";
  ExperimentKind kind = ExperimentKind::Rollout;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir = "out";
  std::vector<std::string> formats{"csv", "json"};
  std::string resolved_json;  // defaults-filled configuration echo
  std::string origin;         // path or "<string>"

  std::optional<RolloutBlock> rollout;
  std::optional<MetricsBlock> metrics;
  std::optional<FallbackBlock> fallback;
  std::optional<MtdBlock> mtd;
  std::optional<MpcBlock> mpc;
  std::optional<GameBlock> game;
  std::optional<PraBlock> pra;
  std::optional<StrategicBlock> strategic;
  std::optional<RiskgraphBlock> net_riskgraph;
  std::optional<NetBlock> net;
};

/// Parses and fully validates a scenario file. Throws ValidationError with
/// the complete list of problems (parse errors carry line context).
ScenarioFile load_scenario(const std::string& path);

/// Same, from an in-memory JSON document.
ScenarioFile parse_scenario(const std::string& json_text, const std::string& origin);

/// Human-readable schema reference with defaults, printed by `netres schema`.
std::string schema_reference();

}  // namespace netres
