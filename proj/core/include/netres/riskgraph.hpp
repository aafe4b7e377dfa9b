#pragma once

#include <map>
#include <string>
#include <vector>

namespace netres {

/// Components and suppliers with directed dependency edges. Roles are
/// metadata; both kinds carry the same binary compromise semantics.
struct SystemGraph {
  enum class Role { Component, Supplier };
  struct Node {
    std::string id;
    Role role = Role::Component;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::string, std::string>> edges;

  bool has_node(const std::string& id) const;
  void validate() const;
};

/// AND/OR goal decomposition whose leaves reference system-graph nodes.
struct AttackTree {
  enum class GateKind { And, Or };
  struct Gate {
    std::string id;
    GateKind kind = GateKind::Or;
    std::vector<std::string> children;  // gate or leaf ids
  };
  struct Leaf {
    std::string id;
    std::string node;  // system-graph node realizing this atomic step
  };
  std::string root;
  std::vector<Gate> gates;
  std::vector<Leaf> leaves;

  /// Single root, acyclic, gates nonempty, every leaf mapped to an existing
  /// system-graph node. Throws ValidationError with the full problem list.
  void validate(const SystemGraph& graph) const;
};

/// Antichain of minimal cut sets in canonical order (each set sorted,
/// family sorted by size then lexicographically).
struct CutSetFamily {
  std::vector<std::vector<std::string>> sets;

  void canonicalize();
  void validate() const;  // antichain, nonempty members
};

using RiskVector = std::map<std::string, double>;

/// Top-down MOCUS gate expansion (OR forks rows, AND extends them) followed
/// by absorption and deduplication; returns exactly the minimal cut sets of
/// the tree's structure function.
CutSetFamily mocus_cut_sets(const AttackTree& tree, const SystemGraph& graph);

/// Cut-set product formula:
///   R(r) = 1 - prod_{w in W} (1 - prod_{v in w} r_v),
/// applied verbatim even when cut sets share nodes (where it is an
/// approximation; see exact_risk).
double systemic_risk(const CutSetFamily& cuts, const RiskVector& risk);

/// Exact top-event probability by enumeration over all states of the
/// distinct nodes appearing in the family (capacity 22 nodes). Serves as
/// the validation oracle for the product formula's independence assumption.
double exact_risk(const CutSetFamily& cuts, const RiskVector& risk);

struct ImportanceRow {
  std::string node;
  double risk = 0.0;
  double ip = 0.0;          // R(r) - R(r with r_v = 0)
  double bi = 0.0;          // R(r_v = 1) - R(r_v = 0), two-point form
  double ri = 0.0;          // r_v * BI
  double derivative = 0.0;  // dR/dr_v of the product formula (diagnostic)
};

/// Improvement potential, Birnbaum importance (two-point form), and risk
/// importance for every node in the risk vector, ordered by node id. The
/// analytic partial derivative is reported alongside: it differs from the
/// two-point BI when a node appears in several cut sets, because the
/// product formula is not multilinear there.
std::vector<ImportanceRow> importance_measures(const CutSetFamily& cuts,
                                               const RiskVector& risk);

/// Top-k nodes by risk importance, ties broken by ascending node id.
std::vector<ImportanceRow> rank_mitigations(const CutSetFamily& cuts,
                                            const RiskVector& risk, int top_k);

}  // namespace netres
