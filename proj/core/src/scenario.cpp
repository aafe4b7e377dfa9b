#include "netres/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netres/errors.hpp"

namespace netres {

using nlohmann::json;

const std::vector<std::string>& experiment_kind_names() {
  static const std::vector<std::string> names{
      "rollout", "metrics", "fallback", "mtd",       "mpc",
      "game",    "pra",     "strategic", "riskgraph", "net"};
  return names;
}

std::string to_string(ExperimentKind kind) {
  return experiment_kind_names()[static_cast<int>(kind)];
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
  const auto& names = experiment_kind_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<ExperimentKind>(i);
  }
  return std::nullopt;
}

namespace {

// Collects every problem found instead of stopping at the first one.
struct Check {
  std::vector<std::string> problems;

  void fail(const std::string& path, const std::string& msg) {
    problems.push_back(path + ": " + msg);
  }
  void absorb(const ValidationError& err, const std::string& path) {
    for (const auto& p : err.problems()) problems.push_back(path + ": " + p);
  }
  // Runs a typed validator even when earlier fields already failed, so the
  // report covers every problem in one pass.
  template <typename Fn>
  void run_validation(Fn&& fn, const std::string& path) {
    try {
      fn();
    } catch (const ValidationError& err) {
      absorb(err, path);
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  bool ok() const { return problems.empty(); }
  void raise_if_failed() const {
    if (!problems.empty()) throw ValidationError(problems);
  }
};

bool has(const json& j, const char* key) { return j.is_object() && j.contains(key); }

double get_num(Check& c, const json& j, const std::string& path, const char* key,
               std::optional<double> def = std::nullopt) {
  if (!has(j, key)) {
    if (def) return *def;
    c.fail(path + "." + key, "required number missing");
    return 0.0;
  }
  if (!j[key].is_number()) {
    c.fail(path + "." + key, "expected a number");
    return def ? *def : 0.0;
  }
  return j[key].get<double>();
}

int get_int(Check& c, const json& j, const std::string& path, const char* key,
            std::optional<int> def = std::nullopt) {
  if (!has(j, key)) {
    if (def) return *def;
    c.fail(path + "." + key, "required integer missing");
    return 0;
  }
  if (!j[key].is_number_integer()) {
    c.fail(path + "." + key, "expected an integer");
    return def ? *def : 0;
  }
  return j[key].get<int>();
}

bool get_bool(Check& c, const json& j, const std::string& path, const char* key,
              bool def) {
  if (!has(j, key)) return def;
  if (!j[key].is_boolean()) {
    c.fail(path + "." + key, "expected a boolean");
    return def;
  }
  return j[key].get<bool>();
}

std::string get_str(Check& c, const json& j, const std::string& path,
                    const char* key, std::optional<std::string> def = std::nullopt) {
  if (!has(j, key)) {
    if (def) return *def;
    c.fail(path + "." + key, "required string missing");
    return {};
  }
  if (!j[key].is_string()) {
    c.fail(path + "." + key, "expected a string");
    return def ? *def : std::string{};
  }
  return j[key].get<std::string>();
}

std::vector<double> get_num_array(Check& c, const json& j, const std::string& path) {
  std::vector<double> out;
  if (!j.is_array()) {
    c.fail(path, "expected an array of numbers");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      c.fail(path + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(0.0);
    } else {
      out.push_back(j[i].get<double>());
    }
  }
  return out;
}

Vec get_vec(Check& c, const json& j, const std::string& path) {
  const auto values = get_num_array(c, j, path);
  Vec v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i];
  return v;
}

Mat get_mat(Check& c, const json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    c.fail(path, "expected a matrix (array of rows)");
    return Mat::Zero(1, 1);
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      c.fail(path + "[" + std::to_string(r) + "]", "ragged matrix row");
      return Mat::Zero(rows, cols);
    }
    for (std::size_t cc = 0; cc < cols; ++cc) {
      if (!j[r][cc].is_number()) {
        c.fail(path, "matrix entries must be numbers");
        return Mat::Zero(rows, cols);
      }
      m(r, cc) = j[r][cc].get<double>();
    }
  }
  return m;
}

MeasureSpec parse_measure(Check& c, const json& j, const std::string& path,
                          MeasureSpec def) {
  MeasureSpec spec = def;
  if (has(j, "measure")) {
    const std::string m = get_str(c, j, path, "measure", std::string("identity"));
    if (m == "identity") spec.kind = MeasureSpec::Kind::Identity;
    else if (m == "negated_abs") spec.kind = MeasureSpec::Kind::NegatedAbs;
    else if (m == "capacity") spec.kind = MeasureSpec::Kind::Capacity;
    else c.fail(path + ".measure", "unknown measure '" + m + "'");
  }
  spec.x_sat = get_num(c, j, path, "x_sat", spec.x_sat);
  return spec;
}

DynamicsModel parse_model(Check& c, const json& j, const std::string& path) {
  if (!j.is_object()) {
    c.fail(path, "expected a model object");
    return make_scalar_linear({});
  }
  const std::string type = get_str(c, j, path, "type");
  try {
    if (type == "scalar_linear") {
      ScalarLinearParams p;
      p.a = get_num(c, j, path, "a", 1.0);
      p.b_u = get_num(c, j, path, "b_u", 0.0);
      p.b_w = get_num(c, j, path, "b_w", 0.0);
      p.b_xi = get_num(c, j, path, "b_xi", 0.0);
      p.q_max = get_num(c, j, path, "q_max", 1.0);
      if (p.q_max <= 0.0) c.fail(path + ".q_max", "q_max must be positive");
      p.measure = parse_measure(c, j, path, p.measure);
      return make_scalar_linear(p);
    }
    if (type == "two_mode_linear") {
      TwoModeLinearParams p;
      p.a_normal = get_num(c, j, path, "a_normal", 1.0);
      p.a_abnormal = get_num(c, j, path, "a_abnormal", 0.5);
      p.b_u = get_num(c, j, path, "b_u", 0.0);
      p.b_w = get_num(c, j, path, "b_w", 1.0);
      p.b_xi = get_num(c, j, path, "b_xi", 1.0);
      p.trip_threshold = get_num(c, j, path, "trip_threshold", 1.0);
      p.recover_threshold = get_num(c, j, path, "recover_threshold", 0.5);
      p.irreversible = get_bool(c, j, path, "irreversible", false);
      p.p_trip = get_num(c, j, path, "p_trip", 0.0);
      p.p_recover = get_num(c, j, path, "p_recover", 0.0);
      p.q_max = get_num(c, j, path, "q_max", 1.0);
      if (p.q_max <= 0.0) c.fail(path + ".q_max", "q_max must be positive");
      p.measure = parse_measure(c, j, path, p.measure);
      return make_two_mode_linear(p);
    }
    if (type == "slice_queue") {
      SliceQueueParams p;
      p.lambda0 = get_num(c, j, path, "lambda0", 2.0);
      p.lambda_attack = get_num(c, j, path, "lambda_attack", 3.0);
      p.mu = get_num(c, j, path, "mu", 4.0);
      p.mu_boost = get_num(c, j, path, "mu_boost", 0.0);
      p.overload_threshold = get_num(c, j, path, "overload_threshold", 10.0);
      p.x_cap = get_num(c, j, path, "x_cap", 20.0);
      p.q_max = get_num(c, j, path, "q_max", 1.0);
      if (p.q_max <= 0.0) c.fail(path + ".q_max", "q_max must be positive");
      return make_slice_queue(p);
    }
    if (type == "tabular") {
      TabularModelParams p;
      p.num_states = get_int(c, j, path, "num_states");
      p.q_max = get_num(c, j, path, "q_max", 1.0);
      if (p.q_max <= 0.0) c.fail(path + ".q_max", "q_max must be positive");
      if (has(j, "modes") && j["modes"].is_array()) {
        p.modes.clear();
        for (const auto& m : j["modes"]) p.modes.push_back(m.get<std::string>());
      }
      if (!has(j, "measure") || !j["measure"].is_array()) {
        c.fail(path + ".measure", "tabular model needs measure[mode][state]");
        return make_scalar_linear({});
      }
      for (const auto& row : j["measure"]) {
        p.measure.push_back(get_num_array(c, row, path + ".measure"));
      }
      if (!has(j, "transitions") || !j["transitions"].is_array()) {
        c.fail(path + ".transitions", "tabular model needs transitions[mode][state][u][w]");
        return make_scalar_linear({});
      }
      int n_inputs = 0;
      int n_attacks = 0;
      for (const auto& per_mode : j["transitions"]) {
        std::vector<std::vector<std::vector<std::vector<TabularTransition>>>> mode_rows;
        for (const auto& per_state : per_mode) {
          std::vector<std::vector<std::vector<TabularTransition>>> state_rows;
          for (const auto& per_u : per_state) {
            std::vector<std::vector<TabularTransition>> u_rows;
            for (const auto& entry : per_u) {
              std::vector<TabularTransition> row;
              if (entry.is_array() && entry.size() == 2 && entry[0].is_number_integer()) {
                row.push_back({1.0, entry[0].get<int>(), entry[1].get<int>()});
              } else if (entry.is_array()) {
                for (const auto& tr : entry) {
                  if (!tr.is_array() || tr.size() != 3) {
                    c.fail(path + ".transitions", "stochastic entry must be [p, state, mode]");
                    continue;
                  }
                  row.push_back({tr[0].get<double>(), tr[1].get<int>(), tr[2].get<int>()});
                }
              } else {
                c.fail(path + ".transitions", "entry must be [state, mode] or a list of [p, state, mode]");
              }
              u_rows.push_back(std::move(row));
            }
            n_attacks = std::max<int>(n_attacks, static_cast<int>(u_rows.size()));
            state_rows.push_back(std::move(u_rows));
          }
          n_inputs = std::max<int>(n_inputs, state_rows.empty() ? 0
                                             : static_cast<int>(state_rows.size()));
          mode_rows.push_back(std::move(state_rows));
        }
        p.transitions.push_back(std::move(mode_rows));
      }
      // Row counts are uniform by construction of the tables.
      if (!p.transitions.empty() && !p.transitions[0].empty()) {
        p.num_inputs = static_cast<int>(p.transitions[0][0].size());
        p.num_attacks = p.num_inputs > 0
                            ? static_cast<int>(p.transitions[0][0][0].size())
                            : 1;
      }
      return make_tabular(p);
    }
    c.fail(path + ".type",
           "unknown model type '" + type +
               "' (expected scalar_linear, two_mode_linear, slice_queue, tabular)");
  } catch (const std::exception& e) {
    c.fail(path, e.what());
  }
  return make_scalar_linear({});
}

HybridState parse_initial(Check& c, const json& j, const std::string& path,
                          const DynamicsModel& model) {
  HybridState s;
  s.x = Vec::Zero(model.state_dim);
  if (!j.is_object()) {
    c.fail(path, "expected an initial-state object");
    return s;
  }
  if (has(j, "x")) s.x = get_vec(c, j["x"], path + ".x");
  if (s.x.size() != model.state_dim) {
    c.fail(path + ".x", "dimension " + std::to_string(s.x.size()) +
                            " does not match the model's " +
                            std::to_string(model.state_dim));
    s.x = Vec::Zero(model.state_dim);
  }
  const std::string mode = get_str(c, j, path, "mode", model.modes.front());
  const int idx = model.mode_index(mode);
  if (idx < 0) {
    c.fail(path + ".mode", "unknown mode '" + mode + "'");
  } else {
    s.mode = idx;
  }
  return s;
}

Policy parse_policy(Check& c, const json& j, const std::string& path,
                    const DynamicsModel& model) {
  if (!j.is_object()) {
    c.fail(path, "expected a policy object");
    return zero_policy(model);
  }
  const std::string type = get_str(c, j, path, "type", std::string("zero"));
  if (type == "zero") return zero_policy(model);
  if (type == "constant") {
    Vec u = has(j, "u") ? get_vec(c, j["u"], path + ".u") : Vec::Zero(model.input_dim);
    return constant_policy(std::move(u));
  }
  if (type == "feedback") {
    if (!has(j, "gain")) {
      c.fail(path + ".gain", "feedback policy needs a gain matrix");
      return zero_policy(model);
    }
    return feedback_policy(get_mat(c, j["gain"], path + ".gain"));
  }
  if (type == "tabular") {
    if (!has(j, "actions") || !j["actions"].is_array()) {
      c.fail(path + ".actions", "tabular policy needs an action index per state");
      return zero_policy(model);
    }
    std::vector<int> table;
    for (const auto& a : j["actions"]) table.push_back(a.get<int>());
    return [table](const HybridState& s, int) -> Vec {
      const int idx = static_cast<int>(std::llround(s.x[0]));
      if (idx < 0 || idx >= static_cast<int>(table.size())) {
        throw std::domain_error("tabular policy undefined for state " +
                                std::to_string(idx));
      }
      Vec u(1);
      u[0] = table[idx];
      return u;
    };
  }
  c.fail(path + ".type", "unknown policy type '" + type +
                             "' (expected zero, constant, feedback, tabular)");
  return zero_policy(model);
}

AttackerProcess parse_attacker(Check& c, const json& j, const std::string& path,
                               const DynamicsModel& model) {
  AttackerProcess out;
  if (j.is_null()) return out;
  if (!j.is_object()) {
    c.fail(path, "expected an attacker object");
    return out;
  }
  const std::string type = get_str(c, j, path, "type", std::string("zero"));
  if (type == "zero") return out;
  if (type == "constant") {
    Vec w = has(j, "w") ? get_vec(c, j["w"], path + ".w") : Vec::Zero(model.attack_dim);
    out.policy = [w](const HybridState&, int) { return w; };
    return out;
  }
  if (type == "path") {
    if (!has(j, "w") || !j["w"].is_array()) {
      c.fail(path + ".w", "attacker path needs an array of input vectors");
      return out;
    }
    for (std::size_t t = 0; t < j["w"].size(); ++t) {
      out.path.push_back(get_vec(c, j["w"][t], path + ".w[" + std::to_string(t) + "]"));
    }
    return out;
  }
  c.fail(path + ".type",
         "unknown attacker type '" + type + "' (expected zero, constant, path)");
  return out;
}

NaturalProcess parse_natural(Check& c, const json& j, const std::string& path) {
  NaturalProcess out;
  if (j.is_null()) return out;
  if (!j.is_object()) {
    c.fail(path, "expected a natural-disturbance object");
    return out;
  }
  const std::string type = get_str(c, j, path, "type", std::string("none"));
  out.dim = get_int(c, j, path, "dim", 1);
  if (type == "none") {
    out.kind = NaturalProcess::Kind::None;
  } else if (type == "gaussian") {
    out.kind = NaturalProcess::Kind::Gaussian;
    out.sigma = get_num(c, j, path, "sigma", 1.0);
    if (out.sigma < 0.0) c.fail(path + ".sigma", "sigma must be >= 0");
  } else if (type == "uniform") {
    out.kind = NaturalProcess::Kind::Uniform;
    out.lo = get_num(c, j, path, "low", 0.0);
    out.hi = get_num(c, j, path, "high", 1.0);
    if (out.hi < out.lo) c.fail(path, "high must be >= low");
  } else if (type == "bernoulli") {
    out.kind = NaturalProcess::Kind::Bernoulli;
    out.p = get_num(c, j, path, "p", 0.5);
    out.magnitude = get_num(c, j, path, "magnitude", 1.0);
    if (out.p < 0.0 || out.p > 1.0) c.fail(path + ".p", "p must lie in [0, 1]");
  } else {
    c.fail(path + ".type", "unknown natural-disturbance type '" + type +
                               "' (expected none, gaussian, uniform, bernoulli)");
  }
  return out;
}

bool natural_is_stochastic(const NaturalProcess& n) {
  return n.kind != NaturalProcess::Kind::None;
}

RolloutBlock parse_rollout_block(Check& c, const json& j, const std::string& path) {
  RolloutBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a rollout block");
    return out;
  }
  out.model = parse_model(c, j.value("model", json()), path + ".model");
  out.initial = parse_initial(c, j.value("initial", json::object()), path + ".initial", out.model);
  out.horizon = get_int(c, j, path, "horizon", 1);
  if (out.horizon < 1) c.fail(path + ".horizon", "horizon must be >= 1");
  out.defender = parse_policy(c, j.value("defender", json::object()), path + ".defender", out.model);
  out.attacker = parse_attacker(c, j.value("attacker", json()), path + ".attacker", out.model);
  out.natural = parse_natural(c, j.value("natural", json()), path + ".natural");
  out.delta = get_num(c, j, path, "delta", 0.8);
  if (!out.attacker.path.empty() &&
      static_cast<int>(out.attacker.path.size()) < out.horizon) {
    c.fail(path + ".attacker.w", "attacker path shorter than the horizon");
  }
  return out;
}

Window parse_window(Check& c, const json& j, const std::string& path,
                    std::optional<int> horizon) {
  Window w;
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    c.fail(path, "expected [first, last] integer pair");
    return w;
  }
  w.first = j[0].get<int>();
  w.last = j[1].get<int>();
  if (w.last < w.first || w.first < 0) c.fail(path, "window must satisfy 0 <= first <= last");
  if (horizon && w.last > *horizon) {
    c.fail(path, "window end exceeds the horizon/series length");
  }
  return w;
}

MetricsBlock parse_metrics_block(Check& c, const json& j, const std::string& path) {
  MetricsBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a metrics block");
    return out;
  }
  if (has(j, "from_rollout")) {
    out.from_rollout = parse_rollout_block(c, j["from_rollout"], path + ".from_rollout");
    out.q_max = out.from_rollout->model.q_max;
  } else if (has(j, "trajectory")) {
    const auto& traj = j["trajectory"];
    out.q = get_num_array(c, traj.value("q", json::array()), path + ".trajectory.q");
    out.q_max = get_num(c, traj, path + ".trajectory", "q_max", 1.0);
    if (out.q.empty()) c.fail(path + ".trajectory.q", "performance series is empty");
    if (out.q_max <= 0.0) c.fail(path + ".trajectory.q_max", "q_max must be positive");
    for (double v : out.q) {
      if (v < 0.0 || v > out.q_max + 1e-12) {
        c.fail(path + ".trajectory.q", "entries must lie in [0, q_max]");
        break;
      }
    }
  } else {
    c.fail(path, "needs either trajectory or from_rollout");
  }

  if (has(j, "slices") && j["slices"].is_array()) {
    for (std::size_t i = 0; i < j["slices"].size(); ++i) {
      const auto& sj = j["slices"][i];
      SliceSeries s;
      s.q = get_num_array(c, sj.value("q", json::array()),
                          path + ".slices[" + std::to_string(i) + "].q");
      s.q_max = get_num(c, sj, path + ".slices[" + std::to_string(i) + "]",
                        "q_max", 1.0);
      out.slices.push_back(std::move(s));
    }
  }
  if (has(j, "latency")) {
    out.latency = get_num_array(c, j["latency"], path + ".latency");
  }

  const int last_index = out.from_rollout
                             ? out.from_rollout->horizon
                             : static_cast<int>(out.q.size()) - 1;
  out.window = parse_window(c, j.value("window", json::array({0, last_index})),
                            path + ".window", last_index);

  const auto& cfg = j.value("config", json::object());
  out.cfg.delta = get_num(c, cfg, path + ".config", "delta", 0.8);
  if (out.cfg.delta <= 0.0 || out.cfg.delta > 1.0) {
    c.fail(path + ".config.delta", "delta must lie in (0, 1]");
  }
  out.cfg.q_sla = get_num(c, cfg, path + ".config", "q_sla", 0.0);
  out.cfg.q_avail = get_num(c, cfg, path + ".config", "q_avail", 0.0);
  out.cfg.l_max = get_num(c, cfg, path + ".config", "l_max", 0.0);
  out.cfg.alpha_cvar = get_num(c, cfg, path + ".config", "alpha_cvar", 0.0);
  // q_max is known either from the inline series or the rollout's model.
  for (auto [name, v] : {std::pair<const char*, double>{"q_sla", out.cfg.q_sla},
                         {"q_avail", out.cfg.q_avail}}) {
    if (v > out.q_max) {
      c.fail(path + ".config." + std::string(name), "threshold exceeds q_max");
    }
  }

  if (has(j, "events")) {
    if (j["events"].is_string() && j["events"].get<std::string>() == "auto") {
      out.auto_detect_events = true;
    } else if (j["events"].is_array()) {
      for (const auto& ej : j["events"]) {
        DisruptionEvent e;
        e.t_f = get_int(c, ej, path + ".events", "t_f");
        e.t_d = get_int(c, ej, path + ".events", "t_d");
        e.t_r = get_int(c, ej, path + ".events", "t_r");
        out.events.push_back(e);
      }
      try {
        validate_events(out.events, last_index);
      } catch (const ValidationError& err) {
        c.absorb(err, path + ".events");
      }
    } else {
      c.fail(path + ".events", "expected an event list or \"auto\"");
    }
  } else {
    out.auto_detect_events = true;
  }

  if (has(j, "composite") && j["composite"].is_array()) {
    double weight_sum = 0.0;
    for (const auto& cj : j["composite"]) {
      const std::string metric = get_str(c, cj, path + ".composite", "metric");
      const double weight = get_num(c, cj, path + ".composite", "weight");
      if (weight < 0.0) c.fail(path + ".composite", "weights must be >= 0");
      weight_sum += weight;
      out.composite.emplace_back(metric, weight);
    }
    if (!out.composite.empty() && std::abs(weight_sum - 1.0) > 1e-12) {
      c.fail(path + ".composite", "weights must sum to 1 (got " +
                                      std::to_string(weight_sum) + ")");
    }
  }

  if (has(j, "cost")) {
    if (j["cost"].is_number()) {
      out.cost.assign(out.window.length(), j["cost"].get<double>());
    } else {
      out.cost = get_num_array(c, j["cost"], path + ".cost");
      if (static_cast<int>(out.cost.size()) != out.window.length()) {
        c.fail(path + ".cost", "cost series must cover the window (" +
                                   std::to_string(out.window.length()) + " steps)");
      }
    }
    for (double v : out.cost) {
      if (v < 0.0) {
        c.fail(path + ".cost", "cost coefficients must be >= 0");
        break;
      }
    }
  }

  if (has(j, "autoscaling")) {
    const auto& aj = j["autoscaling"];
    out.allocated = get_num_array(c, aj.value("allocated", json::array()),
                                  path + ".autoscaling.allocated");
    out.optimal = get_num_array(c, aj.value("optimal", json::array()),
                                path + ".autoscaling.optimal");
    if (out.allocated.size() != out.optimal.size()) {
      c.fail(path + ".autoscaling", "allocated and optimal series differ in length");
    }
  }
  out.disrupted_slice = get_int(c, j, path, "disrupted_slice", 0);
  if (!out.slices.empty()) {
    if (out.disrupted_slice < 0 ||
        out.disrupted_slice >= static_cast<int>(out.slices.size())) {
      c.fail(path + ".disrupted_slice", "index outside the slice list");
    }
    for (std::size_t i = 0; i < out.slices.size(); ++i) {
      if (static_cast<int>(out.slices[i].q.size()) <= out.window.last) {
        c.fail(path + ".slices[" + std::to_string(i) + "].q",
               "series does not cover the metric window");
      }
      if (out.slices[i].q_max <= 0.0) {
        c.fail(path + ".slices[" + std::to_string(i) + "].q_max",
               "q_max must be positive");
      }
    }
  } else if (out.disrupted_slice != 0) {
    c.fail(path + ".disrupted_slice", "no slice list to index into");
  }
  return out;
}

FallbackBlock parse_fallback_block(Check& c, const json& j, const std::string& path) {
  FallbackBlock out;
  if (!j.is_object() || !has(j, "spec")) {
    c.fail(path, "needs a spec object");
    return out;
  }
  const auto& js = j["spec"];
  const std::string sp = path + ".spec";
  out.spec.A[0] = get_mat(c, js.value("A0", json()), sp + ".A0");
  out.spec.A[1] = get_mat(c, js.value("A1", json()), sp + ".A1");
  out.spec.B = get_mat(c, js.value("B", json()), sp + ".B");
  out.spec.R = get_mat(c, js.value("R", json()), sp + ".R");
  out.spec.Q[0] = get_mat(c, js.value("Q0", json()), sp + ".Q0");
  out.spec.Q[1] = get_mat(c, js.value("Q1", json()), sp + ".Q1");
  out.spec.P[0] = get_mat(c, js.value("P0", json()), sp + ".P0");
  out.spec.P[1] = get_mat(c, js.value("P1", json()), sp + ".P1");
  out.spec.s[0] = get_num(c, js, sp, "s0", 0.0);
  out.spec.s[1] = get_num(c, js, sp, "s1", 0.0);
  out.spec.lambda = get_num(c, js, sp, "lambda", 0.0);
  c.run_validation([&] { out.spec.validate(); }, sp);
  if (!has(j, "states") || !j["states"].is_array() || j["states"].empty()) {
    c.fail(path + ".states", "needs at least one state to evaluate");
    return out;
  }
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    out.states.push_back(
        get_vec(c, j["states"][i], path + ".states[" + std::to_string(i) + "]"));
  }
  return out;
}

MtdBlock parse_mtd_block(Check& c, const json& j, const std::string& path) {
  MtdBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected an mtd block");
    return out;
  }
  auto& st = out.state;
  if (has(j, "configs") && j["configs"].is_array()) {
    for (const auto& cj : j["configs"]) st.configs.push_back(cj.get<std::string>());
  } else {
    c.fail(path + ".configs", "needs the configuration name list");
  }
  st.f = get_num_array(c, j.value("f0", json::array()), path + ".f0");
  st.epsilon = get_num(c, j, path, "epsilon", 1.0);
  st.alpha = get_num(c, j, path, "alpha", 0.0);
  if (has(j, "features")) {
    for (const auto& fj : j["features"]) {
      st.features.push_back(get_num_array(c, fj, path + ".features"));
    }
    st.lambda_dual = get_num_array(c, j.value("lambda_dual", json::array()),
                                   path + ".lambda_dual");
  }
  if (has(j, "risk_table")) {
    for (const auto& rj : j["risk_table"]) {
      st.risk_table.push_back(get_num_array(c, rj, path + ".risk_table"));
    }
    if (has(j, "transition")) {
      for (const auto& tj : j["transition"]) {
        std::vector<int> row;
        for (const auto& v : tj) row.push_back(v.get<int>());
        st.transition.push_back(std::move(row));
      }
    }
    st.psi = get_num_array(c, j.value("psi", json::array()), path + ".psi");
    st.surface = get_int(c, j, path, "surface", 0);
  } else if (has(j, "risk")) {
    // Static surface shorthand: one row, self transitions, zero shaping.
    st.risk_table.push_back(get_num_array(c, j["risk"], path + ".risk"));
    st.transition.push_back(std::vector<int>(st.configs.size(), 0));
    st.psi.assign(1, 0.0);
    st.surface = 0;
  } else {
    c.fail(path, "needs either risk (static) or risk_table/transition/psi");
  }
  out.horizon = get_int(c, j, path, "horizon", 1);
  if (out.horizon < 1) c.fail(path + ".horizon", "horizon must be >= 1");
  c.run_validation([&] { st.validate(); }, path);
  return out;
}

MpcBlock parse_mpc_block(Check& c, const json& j, const std::string& path) {
  MpcBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected an mpc block");
    return out;
  }
  out.model = parse_model(c, j.value("model", json()), path + ".model");
  out.initial = parse_initial(c, j.value("initial", json::object()), path + ".initial", out.model);
  out.horizon = get_int(c, j, path, "horizon", 1);
  out.samples = get_int(c, j, path, "samples", 1);
  out.steps = get_int(c, j, path, "steps", 1);
  if (out.horizon < 1) c.fail(path + ".horizon", "horizon must be >= 1");
  if (out.samples < 1) c.fail(path + ".samples", "samples must be >= 1");
  if (out.steps < 1) c.fail(path + ".steps", "steps must be >= 1");

  if (!has(j, "actions") || !j["actions"].is_array() || j["actions"].empty()) {
    c.fail(path + ".actions", "needs a nonempty candidate action list");
  } else {
    for (std::size_t i = 0; i < j["actions"].size(); ++i) {
      out.actions.push_back(
          get_vec(c, j["actions"][i], path + ".actions[" + std::to_string(i) + "]"));
    }
  }

  const auto& oj = j.value("objective", json::object());
  const std::string ot = get_str(c, oj, path + ".objective", "type",
                                 std::string("expectation"));
  if (ot == "expectation") {
    out.objective.kind = MpcObjective::Kind::Expectation;
  } else if (ot == "cvar") {
    out.objective.kind = MpcObjective::Kind::CVaR;
    out.objective.alpha = get_num(c, oj, path + ".objective", "alpha", 0.0);
    if (out.objective.alpha < 0.0 || out.objective.alpha >= 1.0) {
      c.fail(path + ".objective.alpha", "CVaR level must lie in [0, 1)");
    }
  } else {
    c.fail(path + ".objective.type", "expected expectation or cvar");
  }

  const auto& cj = j.value("costs", json::object());
  const std::string ct = get_str(c, cj, path + ".costs", "type", std::string("quadratic"));
  if (ct == "quadratic") {
    Mat q = has(cj, "Q") ? get_mat(c, cj["Q"], path + ".costs.Q")
                         : Mat::Identity(out.model.state_dim, out.model.state_dim);
    Mat r = has(cj, "R") ? get_mat(c, cj["R"], path + ".costs.R")
                         : Mat::Identity(out.model.input_dim, out.model.input_dim);
    Mat p = has(cj, "P") ? get_mat(c, cj["P"], path + ".costs.P")
                         : Mat::Zero(out.model.state_dim, out.model.state_dim);
    out.costs.stage = [q](const Vec& x, const Vec&, int) { return x.dot(q * x); };
    out.costs.control = [r](const Vec& u, int) { return u.dot(r * u); };
    out.costs.terminal = [p](const Vec& x, int) { return x.dot(p * x); };
  } else if (ct == "shortfall") {
    const double cw = get_num(c, cj, path + ".costs", "control_weight", 0.0);
    const double tw = get_num(c, cj, path + ".costs", "terminal_weight", 0.0);
    const DynamicsModel model = out.model;
    out.costs.stage = [model](const Vec& x, const Vec&, int mode) {
      return 1.0 - model.measure(x, mode) / model.q_max;
    };
    out.costs.control = [cw](const Vec& u, int) { return cw * u.squaredNorm(); };
    out.costs.terminal = [model, tw](const Vec& x, int mode) {
      return tw * (1.0 - model.measure(x, mode) / model.q_max);
    };
  } else {
    c.fail(path + ".costs.type", "expected quadratic or shortfall");
  }

  out.attacker = parse_attacker(c, j.value("attacker", json()), path + ".attacker", out.model);
  out.natural = parse_natural(c, j.value("natural", json()), path + ".natural");
  if (!out.attacker.path.empty() &&
      static_cast<int>(out.attacker.path.size()) < out.steps) {
    c.fail(path + ".attacker.w",
           "attacker path must cover the closed-loop steps");
  }
  return out;
}

StochasticGame parse_game_def(Check& c, const json& j, const std::string& path) {
  if (has(j, "slice_migration")) {
    const auto& sj = j["slice_migration"];
    const std::string sp = path + ".slice_migration";
    SliceMigrationParams p;
    p.nodes = get_int(c, sj, sp, "nodes", 3);
    p.queue_levels = get_int(c, sj, sp, "queue_levels", 5);
    p.lambda0 = get_num(c, sj, sp, "lambda0", 1.0);
    p.lambda_flood = get_num(c, sj, sp, "lambda_flood", 2.0);
    p.probe_load = get_num(c, sj, sp, "probe_load", 0.0);
    p.mu = get_num(c, sj, sp, "mu", 1.0);
    p.mu_boost = get_num(c, sj, sp, "mu_boost", 1.0);
    p.mu_migrate = get_num(c, sj, sp, "mu_migrate", 0.0);
    p.burst_prob = get_num(c, sj, sp, "burst_prob", 0.0);
    p.queue_cost = get_num(c, sj, sp, "queue_cost", 1.0);
    p.cost_migrate = get_num(c, sj, sp, "cost_migrate", 0.4);
    p.cost_scale = get_num(c, sj, sp, "cost_scale", 0.2);
    p.cost_flood = get_num(c, sj, sp, "cost_flood", 0.3);
    p.cost_probe = get_num(c, sj, sp, "cost_probe", 0.05);
    p.discount = get_num(c, j, path, "discount", 0.95);

    // The narrative action families without specified dynamics are accepted
    // in the schema and rejected here unless a full tabular game spells out
    // their transitions.
    for (const char* key : {"extra_attacker_actions", "extra_defender_actions"}) {
      if (has(sj, key) && sj[key].is_array() && !sj[key].empty()) {
        for (const auto& a : sj[key]) {
          c.fail(sp + "." + key,
                 "unspecified dynamics for action '" + a.get<std::string>() +
                     "': the built instance covers idle/flood/probe and "
                     "stay/migrate/scale_up; supply a tabular game to add it");
        }
      }
    }
    if (!c.ok()) return StochasticGame{};
    try {
      return build_slice_migration_game(p);
    } catch (const std::exception& e) {
      c.fail(sp, e.what());
      return StochasticGame{};
    }
  }
  if (has(j, "tabular")) {
    const auto& tj = j["tabular"];
    const std::string tp = path + ".tabular";
    StochasticGame g;
    g.discount = get_num(c, j, path, "discount", 0.95);
    if (has(tj, "states") && tj["states"].is_array()) {
      for (const auto& s : tj["states"]) g.state_labels.push_back(s.get<std::string>());
    } else {
      c.fail(tp + ".states", "needs state labels");
    }
    const int n = static_cast<int>(g.state_labels.size());
    auto parse_actions = [&](const char* key) {
      std::vector<std::vector<std::string>> per_state;
      if (!has(tj, key) || !tj[key].is_array() || tj[key].empty()) {
        c.fail(tp + "." + key, "needs action labels");
        return per_state;
      }
      if (tj[key][0].is_string()) {
        std::vector<std::string> shared;
        for (const auto& a : tj[key]) shared.push_back(a.get<std::string>());
        per_state.assign(n, shared);
      } else {
        for (const auto& row : tj[key]) {
          std::vector<std::string> actions;
          for (const auto& a : row) actions.push_back(a.get<std::string>());
          per_state.push_back(std::move(actions));
        }
      }
      return per_state;
    };
    g.defender_actions = parse_actions("defender_actions");
    g.attacker_actions = parse_actions("attacker_actions");

    if (has(tj, "payoff") && tj["payoff"].is_array()) {
      for (const auto& ps : tj["payoff"]) {
        std::vector<std::vector<double>> rows;
        for (const auto& pr : ps) rows.push_back(get_num_array(c, pr, tp + ".payoff"));
        g.payoff.push_back(std::move(rows));
      }
    } else {
      c.fail(tp + ".payoff", "needs payoff[state][defender][attacker]");
    }
    if (has(tj, "kernel") && tj["kernel"].is_array()) {
      for (const auto& ks : tj["kernel"]) {
        std::vector<std::vector<std::vector<double>>> rows;
        for (const auto& kr : ks) {
          std::vector<std::vector<double>> cols;
          for (const auto& ke : kr) cols.push_back(get_num_array(c, ke, tp + ".kernel"));
          rows.push_back(std::move(cols));
        }
        g.kernel.push_back(std::move(rows));
      }
    } else {
      c.fail(tp + ".kernel", "needs kernel[state][defender][attacker][next]");
    }
    if (!g.state_labels.empty() && !g.payoff.empty() && !g.kernel.empty()) {
      c.run_validation([&] { g.validate(); }, tp);
    }
    return g;
  }
  c.fail(path, "needs either slice_migration or tabular");
  return StochasticGame{};
}

GameBlock parse_game_block(Check& c, const json& j, const std::string& path) {
  GameBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a game block");
    return out;
  }
  out.game = parse_game_def(c, j, path);
  out.tolerance = get_num(c, j, path, "tolerance", 1e-10);
  out.max_iterations = get_int(c, j, path, "max_iterations", 10000);
  if (out.tolerance <= 0.0) c.fail(path + ".tolerance", "tolerance must be positive");
  if (out.max_iterations < 1) c.fail(path + ".max_iterations", "must be >= 1");

  if (has(j, "worst_case")) {
    const auto& wj = j["worst_case"];
    out.run_worst_case = get_bool(c, wj, path + ".worst_case", "enabled", true);
    if (has(wj, "defender_policy")) {
      std::vector<std::vector<double>> policy;
      for (const auto& row : wj["defender_policy"]) {
        policy.push_back(get_num_array(c, row, path + ".worst_case.defender_policy"));
      }
      out.worst_case_defender = std::move(policy);
    }
  }
  if (has(j, "qlearning")) {
    const auto& qj = j["qlearning"];
    out.run_qlearning = get_bool(c, qj, path + ".qlearning", "enabled", true);
    out.qlearn.episodes = get_int(c, qj, path + ".qlearning", "episodes", 200);
    out.qlearn.steps_per_episode =
        get_int(c, qj, path + ".qlearning", "steps_per_episode", 100);
    out.qlearn.epsilon = get_num(c, qj, path + ".qlearning", "epsilon", 0.2);
    out.qlearn.rate_c = get_num(c, qj, path + ".qlearning", "rate_c", 50.0);
    out.qlearn_attacker =
        get_str(c, qj, path + ".qlearning", "attacker", std::string("equilibrium"));
    if (out.qlearn_attacker != "equilibrium" && out.qlearn_attacker != "uniform") {
      c.fail(path + ".qlearning.attacker", "expected equilibrium or uniform");
    }
  }
  return out;
}

ScenarioSet parse_scenario_set(Check& c, const json& j, const std::string& path,
                               const DynamicsModel& twin_model) {
  ScenarioSet set;
  set.horizon = get_int(c, j, path, "horizon", 1);
  set.q_min = get_num(c, j, path, "q_min", 0.0);
  set.window = parse_window(c, j.value("window", json::array({0, set.horizon})),
                            path + ".window", set.horizon);
  if (!has(j, "scenarios") || !j["scenarios"].is_array() || j["scenarios"].empty()) {
    c.fail(path + ".scenarios", "needs at least one scenario");
    return set;
  }
  for (std::size_t i = 0; i < j["scenarios"].size(); ++i) {
    const auto& sj = j["scenarios"][i];
    const std::string sp = path + ".scenarios[" + std::to_string(i) + "]";
    Scenario s;
    s.name = get_str(c, sj, sp, "name", "scenario_" + std::to_string(i));
    s.probability = get_num(c, sj, sp, "probability");
    if (has(sj, "model_override")) {
      s.model_override = parse_model(c, sj["model_override"], sp + ".model_override");
    }
    const DynamicsModel& model = s.model_override ? *s.model_override : twin_model;
    s.initial = parse_initial(c, sj.value("initial", json::object()), sp + ".initial", model);
    s.attacker = parse_attacker(c, sj.value("attacker", json()), sp + ".attacker", model);
    if (!s.attacker.path.empty() &&
        static_cast<int>(s.attacker.path.size()) < set.horizon) {
      c.fail(sp + ".attacker.w", "attacker path shorter than the horizon");
    }
    set.scenarios.push_back(std::move(s));
  }
  c.run_validation([&] { set.validate(); }, path);
  return set;
}

PraBlock parse_pra_block(Check& c, const json& j, const std::string& path) {
  PraBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a pra block");
    return out;
  }
  out.twin_model = parse_model(c, j.value("twin_model", json()), path + ".twin_model");
  out.policy = parse_policy(c, j.value("policy", json::object()), path + ".policy", out.twin_model);
  out.natural = parse_natural(c, j.value("natural", json()), path + ".natural");
  out.samples = get_int(c, j, path, "samples", 1);
  out.alpha = get_num(c, j, path, "alpha", 0.0);
  if (out.samples < 1) c.fail(path + ".samples", "samples must be >= 1");
  if (out.alpha < 0.0 || out.alpha >= 1.0) {
    c.fail(path + ".alpha", "CVaR level must lie in [0, 1)");
  }
  out.scenarios = parse_scenario_set(c, j, path, out.twin_model);
  return out;
}

GameEmbedding parse_embedding(Check& c, const json& j, const std::string& path,
                              int num_game_states) {
  GameEmbedding out;
  const std::string type = get_str(c, j, path, "type", std::string("identity"));
  if (type == "identity") {
    out.state_of = [num_game_states](const HybridState& s) -> int {
      const int idx = static_cast<int>(std::llround(s.x[0]));
      if (idx < 0 || idx >= num_game_states) {
        throw std::domain_error("embedding undefined for twin state " +
                                std::to_string(idx));
      }
      return idx;
    };
    out.defender_input = [](int r) -> Vec {
      Vec u(1);
      u[0] = r;
      return u;
    };
    out.attacker_input = [](int e) -> Vec {
      Vec w(1);
      w[0] = e;
      return w;
    };
    return out;
  }
  if (type == "table") {
    std::vector<int> state_map;
    if (has(j, "state_map") && j["state_map"].is_array()) {
      for (const auto& v : j["state_map"]) state_map.push_back(v.get<int>());
    } else {
      c.fail(path + ".state_map", "table embedding needs state_map");
    }
    for (int v : state_map) {
      if (v < 0 || v >= num_game_states) {
        c.fail(path + ".state_map", "entry outside the game state set");
        break;
      }
    }
    std::vector<Vec> def_in, att_in;
    for (const char* key : {"defender_inputs", "attacker_inputs"}) {
      auto& target = std::string(key) == "defender_inputs" ? def_in : att_in;
      if (has(j, key) && j[key].is_array()) {
        for (std::size_t i = 0; i < j[key].size(); ++i) {
          target.push_back(get_vec(c, j[key][i],
                                   path + "." + key + "[" + std::to_string(i) + "]"));
        }
      } else {
        c.fail(path + "." + std::string(key), "table embedding needs input vectors");
      }
    }
    out.state_of = [state_map](const HybridState& s) -> int {
      const int idx = static_cast<int>(std::llround(s.x[0]));
      if (idx < 0 || idx >= static_cast<int>(state_map.size())) {
        throw std::domain_error("embedding undefined for twin state " +
                                std::to_string(idx));
      }
      return state_map[idx];
    };
    out.defender_input = [def_in](int r) -> Vec {
      if (r < 0 || r >= static_cast<int>(def_in.size())) {
        throw std::domain_error("embedding undefined for defender action " +
                                std::to_string(r));
      }
      return def_in[r];
    };
    out.attacker_input = [att_in](int e) -> Vec {
      if (e < 0 || e >= static_cast<int>(att_in.size())) {
        throw std::domain_error("embedding undefined for attacker action " +
                                std::to_string(e));
      }
      return att_in[e];
    };
    return out;
  }
  c.fail(path + ".type", "unknown embedding type '" + type + "'");
  return out;
}

StrategicBlock parse_strategic_block(Check& c, const json& j, const std::string& path) {
  StrategicBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a strategic block");
    return out;
  }
  out.game = parse_game_def(c, j.value("game", json::object()), path + ".game");
  const std::string mode = get_str(c, j, path, "mode", std::string("equilibrium"));
  if (mode == "equilibrium") {
    out.mode = StrategicMode::Equilibrium;
  } else if (mode == "robust") {
    out.mode = StrategicMode::Robust;
  } else {
    c.fail(path + ".mode", "expected equilibrium or robust");
  }
  out.twin_model = parse_model(c, j.value("twin_model", json()), path + ".twin_model");
  out.embedding = parse_embedding(c, j.value("embedding", json::object()),
                                  path + ".embedding", out.game.num_states());
  out.natural = parse_natural(c, j.value("natural", json()), path + ".natural");
  out.samples = get_int(c, j, path, "samples", 1);
  out.alpha = get_num(c, j, path, "alpha", 0.0);
  if (out.samples < 1) c.fail(path + ".samples", "samples must be >= 1");
  if (out.alpha < 0.0 || out.alpha >= 1.0) {
    c.fail(path + ".alpha", "CVaR level must lie in [0, 1)");
  }
  out.scenarios = parse_scenario_set(c, j, path, out.twin_model);
  return out;
}

RiskgraphBlock parse_riskgraph_block(Check& c, const json& j, const std::string& path) {
  RiskgraphBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a riskgraph block");
    return out;
  }
  const auto& gj = j.value("system_graph", json::object());
  if (has(gj, "nodes") && gj["nodes"].is_array()) {
    for (const auto& nj : gj["nodes"]) {
      SystemGraph::Node node;
      node.id = get_str(c, nj, path + ".system_graph.nodes", "id");
      const std::string role =
          get_str(c, nj, path + ".system_graph.nodes", "role", std::string("component"));
      if (role == "component") {
        node.role = SystemGraph::Role::Component;
      } else if (role == "supplier") {
        node.role = SystemGraph::Role::Supplier;
      } else {
        c.fail(path + ".system_graph.nodes", "role must be component or supplier");
      }
      out.graph.nodes.push_back(std::move(node));
    }
  } else {
    c.fail(path + ".system_graph.nodes", "needs the node list");
  }
  if (has(gj, "edges") && gj["edges"].is_array()) {
    for (const auto& ej : gj["edges"]) {
      if (!ej.is_array() || ej.size() != 2) {
        c.fail(path + ".system_graph.edges", "edges are [from, to] pairs");
        continue;
      }
      out.graph.edges.emplace_back(ej[0].get<std::string>(), ej[1].get<std::string>());
    }
  }

  const auto& tj = j.value("attack_tree", json::object());
  out.tree.root = get_str(c, tj, path + ".attack_tree", "root");
  if (has(tj, "gates") && tj["gates"].is_array()) {
    for (const auto& gjj : tj["gates"]) {
      AttackTree::Gate gate;
      gate.id = get_str(c, gjj, path + ".attack_tree.gates", "id");
      const std::string type = get_str(c, gjj, path + ".attack_tree.gates", "type");
      if (type == "AND" || type == "and") {
        gate.kind = AttackTree::GateKind::And;
      } else if (type == "OR" || type == "or") {
        gate.kind = AttackTree::GateKind::Or;
      } else {
        c.fail(path + ".attack_tree.gates", "gate type must be AND or OR");
      }
      if (has(gjj, "children") && gjj["children"].is_array()) {
        for (const auto& ch : gjj["children"]) gate.children.push_back(ch.get<std::string>());
      }
      out.tree.gates.push_back(std::move(gate));
    }
  }
  if (has(tj, "leaves") && tj["leaves"].is_array()) {
    for (const auto& lj : tj["leaves"]) {
      AttackTree::Leaf leaf;
      leaf.id = get_str(c, lj, path + ".attack_tree.leaves", "id");
      leaf.node = get_str(c, lj, path + ".attack_tree.leaves", "node");
      out.tree.leaves.push_back(std::move(leaf));
    }
  } else {
    c.fail(path + ".attack_tree.leaves", "needs the leaf list");
  }

  if (has(j, "risk") && j["risk"].is_object()) {
    for (auto it = j["risk"].begin(); it != j["risk"].end(); ++it) {
      if (!it.value().is_number()) {
        c.fail(path + ".risk." + it.key(), "expected a number");
        continue;
      }
      const double v = it.value().get<double>();
      if (v < 0.0 || v > 1.0) {
        c.fail(path + ".risk." + it.key(), "risk must lie in [0, 1]");
      }
      out.risk[it.key()] = v;
    }
  } else {
    c.fail(path + ".risk", "needs the node risk map");
  }

  out.top_k = get_int(c, j, path, "top_k", 5);
  if (out.top_k < 1) c.fail(path + ".top_k", "top_k must be >= 1");
  out.exact = get_bool(c, j, path, "exact", true);

  c.run_validation([&] { out.graph.validate(); }, path + ".system_graph");
  c.run_validation([&] { out.tree.validate(out.graph); }, path + ".attack_tree");
  {
    for (const auto& n : out.graph.nodes) {
      bool referenced = false;
      for (const auto& l : out.tree.leaves) {
        if (l.node == n.id) {
          referenced = true;
          break;
        }
      }
      if (referenced && !out.risk.count(n.id)) {
        c.fail(path + ".risk", "missing risk value for node " + n.id);
      }
    }
  }
  return out;
}

NetBlock parse_net_block(Check& c, const json& j, const std::string& path) {
  NetBlock out;
  if (!j.is_object()) {
    c.fail(path, "expected a net block");
    return out;
  }
  out.intensity = get_num(c, j, path, "intensity", 1.0);
  out.side = get_num(c, j, path, "side", 10.0);
  out.radius = get_num(c, j, path, "radius", 1.0);
  if (out.intensity < 0.0) c.fail(path + ".intensity", "intensity must be >= 0");
  if (out.side <= 0.0) c.fail(path + ".side", "side must be positive");
  if (out.radius < 0.0) c.fail(path + ".radius", "radius must be >= 0");
  out.degree = get_bool(c, j, path, "degree", true);
  out.export_edges = get_bool(c, j, path, "export_edges", false);

  if (has(j, "percolation")) {
    const auto& pj = j["percolation"];
    NetBlock::Percolation p;
    const std::string vary = get_str(c, pj, path + ".percolation", "vary",
                                     std::string("radius"));
    if (vary == "radius") {
      p.vary = PercolationScan::Vary::Radius;
    } else if (vary == "intensity") {
      p.vary = PercolationScan::Vary::Intensity;
    } else {
      c.fail(path + ".percolation.vary", "expected radius or intensity");
    }
    p.grid = get_num_array(c, pj.value("grid", json::array()), path + ".percolation.grid");
    if (p.grid.empty()) c.fail(path + ".percolation.grid", "grid is empty");
    if (!std::is_sorted(p.grid.begin(), p.grid.end())) {
      c.fail(path + ".percolation.grid", "grid must be sorted ascending");
    }
    p.samples = get_int(c, pj, path + ".percolation", "samples", 10);
    if (p.samples < 1) c.fail(path + ".percolation.samples", "samples must be >= 1");
    out.percolation = std::move(p);
  }
  if (has(j, "sis")) {
    const auto& sj = j["sis"];
    NetBlock::Sis s;
    s.model.beta = get_num(c, sj, path + ".sis", "beta", 0.1);
    s.model.mu = get_num(c, sj, path + ".sis", "mu", 1.0);
    s.model.dt = get_num(c, sj, path + ".sis", "dt", 0.1);
    s.initial_fraction = get_num(c, sj, path + ".sis", "initial_fraction", 0.1);
    s.horizon = get_int(c, sj, path + ".sis", "horizon", 100);
    if (s.model.beta < 0.0 || s.model.mu < 0.0) {
      c.fail(path + ".sis", "rates must be >= 0");
    }
    if (s.model.dt <= 0.0) c.fail(path + ".sis.dt", "dt must be positive");
    if (s.initial_fraction < 0.0 || s.initial_fraction > 1.0) {
      c.fail(path + ".sis.initial_fraction", "must lie in [0, 1]");
    }
    if (s.horizon < 1) c.fail(path + ".sis.horizon", "horizon must be >= 1");
    out.sis = std::move(s);
  }
  if (has(j, "indicators")) {
    const auto& ij = j["indicators"];
    NetBlock::Indicators ind;
    ind.beta = get_num(c, ij, path + ".indicators", "beta", 0.0);
    ind.mu = get_num(c, ij, path + ".indicators", "mu", 1.0);
    if (ind.mu <= 0.0) c.fail(path + ".indicators.mu", "mu must be positive");
    out.indicators = ind;
  }
  return out;
}

bool kind_is_stochastic(const ScenarioFile& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Mpc:
    case ExperimentKind::Pra:
    case ExperimentKind::Strategic:
    case ExperimentKind::Net:
      return true;
    case ExperimentKind::Game:
      return cfg.game && cfg.game->run_qlearning;
    case ExperimentKind::Rollout:
      return cfg.rollout && natural_is_stochastic(cfg.rollout->natural);
    case ExperimentKind::Metrics:
      return cfg.metrics && cfg.metrics->from_rollout &&
             natural_is_stochastic(cfg.metrics->from_rollout->natural);
    default:
      return false;
  }
}

}  // namespace

ScenarioFile parse_scenario(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line for the error report.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') ++line;
    }
    throw ValidationError(origin + ":" + std::to_string(line) +
                          ": JSON parse error: " + e.what());
  }

  Check c;
  ScenarioFile cfg;
  cfg.origin = origin;
  if (!doc.is_object()) {
    c.fail(origin, "scenario must be a JSON object");
    c.raise_if_failed();
  }
  cfg.version = get_str(c, doc, "$", "version", std::string("1"));
  if (cfg.version != "1") c.fail("$.version", "unsupported version '" + cfg.version + "'");

  const std::string kind_name = get_str(c, doc, "$", "kind");
  auto kind = parse_experiment_kind(kind_name);
  if (!kind_name.empty() && !kind) {
    std::string valid;
    for (const auto& k : experiment_kind_names()) {
      if (!valid.empty()) valid += ", ";
      valid += k;
    }
    c.fail("$.kind", "unknown experiment kind '" + kind_name + "' (valid: " + valid + ")");
  }
  if (!kind) {
    if (c.ok()) c.fail("$.kind", "required string missing");
    c.raise_if_failed();
    throw ValidationError("unreachable");
  }
  cfg.kind = *kind;

  // Exactly one kind block per file.
  for (const auto& name : experiment_kind_names()) {
    if (doc.contains(name) && name != kind_name) {
      c.fail("$." + name, "block present but kind is '" + kind_name + "'");
    }
  }
  if (!doc.contains(kind_name)) {
    c.fail("$." + kind_name, "missing the block for kind '" + kind_name + "'");
    c.raise_if_failed();
  }

  if (has(doc, "seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      c.fail("$.seed", "seed must be a nonnegative integer");
    } else {
      const auto s = doc["seed"].get<std::int64_t>();
      if (s < 0) {
        c.fail("$.seed", "seed must be a nonnegative integer");
      } else {
        cfg.seed = static_cast<std::uint64_t>(s);
        cfg.seed_set = true;
      }
    }
  }
  if (has(doc, "output")) {
    const auto& oj = doc["output"];
    cfg.out_dir = get_str(c, oj, "$.output", "dir", cfg.out_dir);
    if (has(oj, "formats") && oj["formats"].is_array()) {
      cfg.formats.clear();
      for (const auto& f : oj["formats"]) {
        if (!f.is_string()) {
          c.fail("$.output.formats", "formats must be strings");
          continue;
        }
        const std::string fmt = f.get<std::string>();
        if (fmt != "csv" && fmt != "json") {
          c.fail("$.output.formats", "unknown format '" + fmt + "'");
        } else {
          cfg.formats.push_back(fmt);
        }
      }
    }
  }

  const json& block = doc[kind_name];
  const std::string bp = "$." + kind_name;
  try {
    switch (cfg.kind) {
      case ExperimentKind::Rollout:
        cfg.rollout = parse_rollout_block(c, block, bp);
        break;
      case ExperimentKind::Metrics:
        cfg.metrics = parse_metrics_block(c, block, bp);
        break;
      case ExperimentKind::Fallback:
        cfg.fallback = parse_fallback_block(c, block, bp);
        break;
      case ExperimentKind::Mtd:
        cfg.mtd = parse_mtd_block(c, block, bp);
        break;
      case ExperimentKind::Mpc:
        cfg.mpc = parse_mpc_block(c, block, bp);
        break;
      case ExperimentKind::Game:
        cfg.game = parse_game_block(c, block, bp);
        break;
      case ExperimentKind::Pra:
        cfg.pra = parse_pra_block(c, block, bp);
        break;
      case ExperimentKind::Strategic:
        cfg.strategic = parse_strategic_block(c, block, bp);
        break;
      case ExperimentKind::Riskgraph:
        cfg.net_riskgraph = parse_riskgraph_block(c, block, bp);
        break;
      case ExperimentKind::Net:
        cfg.net = parse_net_block(c, block, bp);
        break;
    }
  } catch (const json::exception& e) {
    // Type surprises deep inside a block (an object where an array was
    // expected and the like) surface as one structural problem rather
    // than a crash.
    c.fail(bp, std::string("malformed structure: ") + e.what());
  }

  if (!cfg.seed_set && kind_is_stochastic(cfg)) {
    c.fail("$.seed", "seed is mandatory for stochastic experiment kind '" +
                         kind_name + "'");
  }

  c.raise_if_failed();

  // Defaults-filled echo for the run report.
  json echo = doc;
  echo["version"] = cfg.version;
  echo["seed"] = cfg.seed;
  echo["output"] = {{"dir", cfg.out_dir}, {"formats", cfg.formats}};
  cfg.resolved_json = echo.dump(2);
  return cfg;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open scenario file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string schema_reference() {
  return R"(Scenario file reference (JSON, one experiment per file)
=======================================================

Top level
  version   string, must be "1"                        (default "1")
  kind      one of: rollout, metrics, fallback, mtd, mpc, game, pra,
            strategic, riskgraph, net
  seed      nonnegative integer; mandatory for stochastic kinds
            (mpc, pra, strategic, net; game with qlearning; rollout or
            metrics.from_rollout with a non-"none" natural block)
  output    {"dir": "out", "formats": ["csv","json"]}   (both default)
  <kind>    the block named after the kind; exactly one per file

Shared objects
  model     {"type":"scalar_linear","a":1,"b_u":0,"b_w":0,"b_xi":0,
             "q_max":1,"measure":"identity","x_sat":1}
            {"type":"two_mode_linear","a_normal":1,"a_abnormal":0.5,
             "b_u":0,"b_w":1,"b_xi":1,"trip_threshold":1,
             "recover_threshold":0.5,"irreversible":false,"p_trip":0,
             "p_recover":0,"q_max":1,"measure":"negated_abs"}
            {"type":"slice_queue","lambda0":2,"lambda_attack":3,"mu":4,
             "mu_boost":0,"overload_threshold":10,"x_cap":20,"q_max":1}
            {"type":"tabular","num_states":N,"modes":["normal"],
             "q_max":1,"measure":[[Q per state] per mode],
             "transitions":[mode][state][u][w] = [s',m'] or
             [[p,s',m'],...]}
            measure is one of identity | negated_abs | capacity.
  initial   {"x":[...], "mode":"normal"}
  policy    {"type":"zero"} | {"type":"constant","u":[...]}
            | {"type":"feedback","gain":[[...]]}
            | {"type":"tabular","actions":[u per state]}
  attacker  {"type":"zero"} | {"type":"constant","w":[...]}
            | {"type":"path","w":[[...],...]}       (covers the horizon)
  natural   {"type":"none"} | {"type":"gaussian","sigma":1,"dim":1}
            | {"type":"uniform","low":0,"high":1,"dim":1}
            | {"type":"bernoulli","p":0.5,"magnitude":1,"dim":1}
  window    [first, last], inclusive time indices

Kind blocks
  rollout   {"model":..,"initial":..,"horizon":T,"defender":policy,
             "attacker":..,"natural":..,"delta":0.8}
  metrics   {"trajectory":{"q":[...],"q_max":..} or "from_rollout":rollout,
             "window":[a,b],"events":[{"t_f":..,"t_d":..,"t_r":..}]|"auto",
             "config":{"delta":0.8,"q_sla":0,"q_avail":0,"l_max":0,
                       "alpha_cvar":0},
             "slices":[{"q":[...],"q_max":..}],"disrupted_slice":0,
             "latency":[...],
             "composite":[{"metric":"availability","weight":0.5},...],
             "cost":constant or series over the window,
             "autoscaling":{"allocated":[...],"optimal":[...]}}
            composite metrics: availability, latency_compliance,
            sla_compliance, slice_isolation, normalized_loss,
            autoscaling_efficiency (weights must sum to 1)
  fallback  {"spec":{"A0":[[..]],"A1":[[..]],"B":[[..]],"R":[[..]],
             "Q0":..,"Q1":..,"P0":..,"P1":..,"s0":0,"s1":0,"lambda":0},
             "states":[[...],...]}
  mtd       {"configs":["a","b"],"f0":[..],"epsilon":1,"horizon":1,
             "risk":[..]                                (static surface)
             or "risk_table":[[..] per surface],
                "transition":[[surface' per config] per surface],
                "psi":[..],"surface":0,"alpha":0,
             "features":[[..] per config],"lambda_dual":[..]}
  mpc       {"model":..,"initial":..,"actions":[[..],...],"horizon":H,
             "samples":N,"steps":n,
             "objective":{"type":"expectation"}|{"type":"cvar","alpha":0.9},
             "costs":{"type":"quadratic","Q":[[..]],"R":[[..]],"P":[[..]]}
                    |{"type":"shortfall","control_weight":0,
                      "terminal_weight":0},
             "attacker":..,"natural":..}
  game      {"slice_migration":{"nodes":3,"queue_levels":5,"lambda0":1,
              "lambda_flood":2,"probe_load":0,"mu":1,"mu_boost":1,
              "mu_migrate":0,"burst_prob":0,"queue_cost":1,
              "cost_migrate":0.4,"cost_scale":0.2,"cost_flood":0.3,
              "cost_probe":0.05}
             or "tabular":{"states":[..],"defender_actions":[..],
              "attacker_actions":[..],"payoff":[s][r][e],
              "kernel":[s][r][e][s']},
             "discount":0.95,"tolerance":1e-10,"max_iterations":10000,
             "worst_case":{"enabled":true,"defender_policy":[[..]]?},
             "qlearning":{"enabled":true,"episodes":200,
              "steps_per_episode":100,"epsilon":0.2,"rate_c":50,
              "attacker":"equilibrium"|"uniform"}}
            slice_migration accepts extra_attacker_actions /
            extra_defender_actions but rejects them: those narrative
            actions have no specified dynamics; encode them via a
            tabular game instead.
  pra       {"twin_model":..,"policy":..,"natural":..,"samples":N,
             "alpha":0.9,"horizon":T,"window":[a,b],"q_min":0,
             "scenarios":[{"name":..,"probability":..,"attacker":..,
              "initial":..,"model_override":model?},...]}
            probabilities must sum to 1.
  strategic {"game":{as above},"mode":"equilibrium"|"robust",
             "twin_model":..,"embedding":{"type":"identity"}
              |{"type":"table","state_map":[game state per twin state],
                "defender_inputs":[[..]],"attacker_inputs":[[..]]},
             "scenarios":..,"natural":..,"samples":N,"alpha":..,
             "horizon":T,"window":[a,b],"q_min":0}
  riskgraph {"system_graph":{"nodes":[{"id":..,"role":"component"|
              "supplier"}],"edges":[[from,to],...]},
             "attack_tree":{"root":id,"gates":[{"id":..,"type":"AND"|"OR",
              "children":[..]}],"leaves":[{"id":..,"node":sysnode}]},
             "risk":{node:value in [0,1]},"top_k":5,"exact":true}
  net       {"intensity":1,"side":10,"radius":1,"degree":true,
             "export_edges":false,
             "percolation":{"vary":"radius"|"intensity","grid":[..],
              "samples":10},
             "sis":{"beta":..,"mu":..,"dt":0.1,"initial_fraction":0.1,
              "horizon":100},
             "indicators":{"beta":..,"mu":..}}

Exit codes: 0 success, 1 validation failure, 2 runtime failure.
)";
}

}  // namespace netres
