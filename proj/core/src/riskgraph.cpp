#include "netres/riskgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "netres/errors.hpp"

namespace netres {

bool SystemGraph::has_node(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return true;
  }
  return false;
}

void SystemGraph::validate() const {
  std::vector<std::string> problems;
  std::unordered_set<std::string> seen;
  for (const auto& n : nodes) {
    if (n.id.empty()) problems.push_back("system graph has a node with an empty id");
    if (!seen.insert(n.id).second) {
      problems.push_back("duplicate system node id: " + n.id);
    }
  }
  for (const auto& [from, to] : edges) {
    if (!seen.count(from) || !seen.count(to)) {
      problems.push_back("edge " + from + " -> " + to + " references an unknown node");
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

void AttackTree::validate(const SystemGraph& graph) const {
  std::vector<std::string> problems;
  std::unordered_map<std::string, const Gate*> gate_by_id;
  std::unordered_map<std::string, const Leaf*> leaf_by_id;
  for (const auto& g : gates) {
    if (!gate_by_id.emplace(g.id, &g).second) {
      problems.push_back("duplicate gate id: " + g.id);
    }
    if (g.children.empty()) {
      problems.push_back("gate " + g.id + " has no children");
    }
  }
  for (const auto& l : leaves) {
    if (gate_by_id.count(l.id) || !leaf_by_id.emplace(l.id, &l).second) {
      problems.push_back("duplicate tree node id: " + l.id);
    }
    if (!graph.has_node(l.node)) {
      problems.push_back("leaf " + l.id + " maps to unknown system node " + l.node);
    }
  }
  if (root.empty() || (!gate_by_id.count(root) && !leaf_by_id.count(root))) {
    problems.push_back("tree root is missing or undeclared");
  }

  // Reachability + cycle check from the root.
  std::unordered_set<std::string> visiting;
  std::unordered_set<std::string> done;
  std::vector<std::string> referenced;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    if (done.count(id)) return;
    if (visiting.count(id)) {
      problems.push_back("cycle through tree node " + id);
      return;
    }
    visiting.insert(id);
    referenced.push_back(id);
    auto it = gate_by_id.find(id);
    if (it != gate_by_id.end()) {
      for (const auto& c : it->second->children) {
        if (!gate_by_id.count(c) && !leaf_by_id.count(c)) {
          problems.push_back("gate " + id + " references unknown child " + c);
        } else {
          walk(c);
        }
      }
    }
    visiting.erase(id);
    done.insert(id);
  };
  if (!root.empty() && (gate_by_id.count(root) || leaf_by_id.count(root))) {
    walk(root);
    for (const auto& g : gates) {
      if (!done.count(g.id)) {
        problems.push_back("gate " + g.id + " is unreachable from the root");
      }
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

void CutSetFamily::canonicalize() {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

void CutSetFamily::validate() const {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) {
      problems.push_back("cut set " + std::to_string(i) + " is empty");
    }
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i == j) continue;
      if (std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(),
                        sets[j].end())) {
        problems.push_back("cut set " + std::to_string(i) +
                           " is a superset of cut set " + std::to_string(j));
      }
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

CutSetFamily mocus_cut_sets(const AttackTree& tree, const SystemGraph& graph) {
  tree.validate(graph);
  std::unordered_map<std::string, const AttackTree::Gate*> gate_by_id;
  for (const auto& g : tree.gates) gate_by_id[g.id] = &g;
  std::unordered_map<std::string, std::string> leaf_node;
  for (const auto& l : tree.leaves) leaf_node[l.id] = l.node;

  // Rows hold tree-node ids; expansion rewrites the first gate found.
  std::vector<std::vector<std::string>> rows{{tree.root}};
  bool expanded = true;
  while (expanded) {
    expanded = false;
    std::vector<std::vector<std::string>> next_rows;
    for (auto& row : rows) {
      std::size_t gate_pos = row.size();
      const AttackTree::Gate* gate = nullptr;
      for (std::size_t i = 0; i < row.size(); ++i) {
        auto it = gate_by_id.find(row[i]);
        if (it != gate_by_id.end()) {
          gate_pos = i;
          gate = it->second;
          break;
        }
      }
      if (!gate) {
        next_rows.push_back(std::move(row));
        continue;
      }
      expanded = true;
      if (gate->kind == AttackTree::GateKind::And) {
        std::vector<std::string> merged;
        merged.reserve(row.size() + gate->children.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i != gate_pos) merged.push_back(row[i]);
        }
        merged.insert(merged.end(), gate->children.begin(), gate->children.end());
        next_rows.push_back(std::move(merged));
      } else {
        for (const auto& child : gate->children) {
          std::vector<std::string> forked;
          forked.reserve(row.size());
          for (std::size_t i = 0; i < row.size(); ++i) {
            forked.push_back(i == gate_pos ? child : row[i]);
          }
          next_rows.push_back(std::move(forked));
        }
      }
      if (next_rows.size() > 1000000) {
        throw std::runtime_error("MOCUS expansion exceeded the row capacity");
      }
    }
    rows = std::move(next_rows);
  }

  CutSetFamily family;
  family.sets.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> cut;
    cut.reserve(row.size());
    for (const auto& id : row) cut.push_back(leaf_node.at(id));
    family.sets.push_back(std::move(cut));
  }
  family.canonicalize();

  // Absorption: rows sorted by size, so any superset of an earlier kept set
  // is dropped.
  std::vector<std::vector<std::string>> minimal;
  for (const auto& cand : family.sets) {
    bool absorbed = false;
    for (const auto& kept : minimal) {
      if (std::includes(cand.begin(), cand.end(), kept.begin(), kept.end())) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) minimal.push_back(cand);
  }
  family.sets = std::move(minimal);
  return family;
}

namespace {

double node_risk(const RiskVector& risk, const std::string& id) {
  auto it = risk.find(id);
  if (it == risk.end()) {
    throw std::domain_error("no risk value for node " + id);
  }
  if (it->second < 0.0 || it->second > 1.0) {
    throw std::domain_error("risk of node " + id + " outside [0, 1]");
  }
  return it->second;
}

}  // namespace

double systemic_risk(const CutSetFamily& cuts, const RiskVector& risk) {
  double survive = 1.0;
  for (const auto& w : cuts.sets) {
    double joint = 1.0;
    for (const auto& v : w) joint *= node_risk(risk, v);
    survive *= 1.0 - joint;
  }
  return 1.0 - survive;
}

double exact_risk(const CutSetFamily& cuts, const RiskVector& risk) {
  std::set<std::string> distinct;
  for (const auto& w : cuts.sets) distinct.insert(w.begin(), w.end());
  const int n = static_cast<int>(distinct.size());
  if (n > 22) {
    throw std::domain_error(
        "exact enumeration supports at most 22 distinct nodes; "
        "use systemic_risk for larger families");
  }
  std::vector<std::string> ids(distinct.begin(), distinct.end());
  std::vector<double> r(ids.size());
  std::unordered_map<std::string, int> pos;
  for (int i = 0; i < n; ++i) {
    r[i] = node_risk(risk, ids[i]);
    pos[ids[i]] = i;
  }
  // Cut sets as bitmasks over the distinct nodes.
  std::vector<std::uint32_t> masks;
  masks.reserve(cuts.sets.size());
  for (const auto& w : cuts.sets) {
    std::uint32_t m = 0;
    for (const auto& v : w) m |= 1u << pos[v];
    masks.push_back(m);
  }

  double total = 0.0;
  const std::uint64_t limit = 1ull << n;
  for (std::uint64_t state = 0; state < limit; ++state) {
    // Bit set = node compromised.
    bool failed = false;
    for (std::uint32_t m : masks) {
      if ((state & m) == m) {
        failed = true;
        break;
      }
    }
    if (!failed) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      p *= (state >> i) & 1u ? r[i] : 1.0 - r[i];
    }
    total += p;
  }
  return total;
}

std::vector<ImportanceRow> importance_measures(const CutSetFamily& cuts,
                                               const RiskVector& risk) {
  const double base = systemic_risk(cuts, risk);
  std::vector<ImportanceRow> rows;
  rows.reserve(risk.size());
  for (const auto& [id, r_v] : risk) {
    ImportanceRow row;
    row.node = id;
    row.risk = r_v;

    RiskVector patched = risk;
    patched[id] = 0.0;
    const double at_zero = systemic_risk(cuts, patched);
    patched[id] = 1.0;
    const double at_one = systemic_risk(cuts, patched);

    row.ip = base - at_zero;
    row.bi = at_one - at_zero;
    row.ri = r_v * row.bi;

    // Analytic partial of the product formula.
    double deriv = 0.0;
    for (std::size_t w = 0; w < cuts.sets.size(); ++w) {
      const auto& cut = cuts.sets[w];
      if (std::find(cut.begin(), cut.end(), id) == cut.end()) continue;
      double partial = 1.0;
      for (const auto& v : cut) {
        if (v != id) partial *= node_risk(risk, v);
      }
      double others = 1.0;
      for (std::size_t w2 = 0; w2 < cuts.sets.size(); ++w2) {
        if (w2 == w) continue;
        double joint = 1.0;
        for (const auto& v : cuts.sets[w2]) joint *= node_risk(risk, v);
        others *= 1.0 - joint;
      }
      deriv += partial * others;
    }
    row.derivative = deriv;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ImportanceRow> rank_mitigations(const CutSetFamily& cuts,
                                            const RiskVector& risk, int top_k) {
  if (top_k < 1) throw std::domain_error("top_k must be >= 1");
  auto rows = importance_measures(cuts, risk);
  std::sort(rows.begin(), rows.end(), [](const ImportanceRow& a, const ImportanceRow& b) {
    if (a.ri != b.ri) return a.ri > b.ri;
    return a.node < b.node;
  });
  if (static_cast<int>(rows.size()) > top_k) rows.resize(top_k);
  return rows;
}

}  // namespace netres
