#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gedembed/graph.hpp"

namespace gedembed {

// Total node alignment between two graphs: g1 node i maps to to_g2[i], or to
// kDeleted. g2 nodes not hit by the map are insertions.
struct NodeMapping {
  static constexpr int kDeleted = -1;
  std::vector<int> to_g2;

  int size() const { return static_cast<int>(to_g2.size()); }
  NodeMapping inverted(int g2_nodes) const;
};

struct NodeInsert {
  std::string label;
};
struct NodeDelete {
  int id;
};
struct NodeRelabel {
  int id;
  std::string new_label;
};
struct EdgeInsert {
  int u, v;
};
struct EdgeDelete {
  int u, v;
};

using EditOp = std::variant<NodeInsert, NodeDelete, NodeRelabel, EdgeInsert, EdgeDelete>;

// Ordered edit script. Node ids are stable: g1 nodes keep their ids, inserted
// nodes take fresh ids n1, n1+1, ... in op order. Cost is one per op.
struct EditPath {
  std::vector<EditOp> ops;
  int cost() const { return static_cast<int>(ops.size()); }
};

enum class GedBound { exact, upper, lower };
enum class GedSolver { astar, beam, bipartite, hed, ensemble };

const char* to_string(GedBound b);
const char* to_string(GedSolver s);

struct GedResult {
  int value = 0;
  GedBound bound = GedBound::exact;
  GedSolver solver = GedSolver::astar;
  std::optional<EditPath> path;
  int beam_width = 0;  // beam solver only
};

// Validates that the mapping is total over g1 and injective into g2.
void validate_mapping(const LabeledGraph& g1, const LabeledGraph& g2, const NodeMapping& m);

// Edit cost implied by a fixed alignment: relabels + node deletions +
// node insertions + unmatched edges on both sides. Any alignment's induced
// cost is an upper bound on the exact edit distance.
int induced_edit_cost(const LabeledGraph& g1, const LabeledGraph& g2, const NodeMapping& m);

// Explicit edit script realizing the alignment; its length equals
// induced_edit_cost. Ops are ordered so every prefix is applicable:
// edge deletions, node deletions, relabels, node insertions, edge insertions.
EditPath build_edit_path(const LabeledGraph& g1, const LabeledGraph& g2, const NodeMapping& m);

// Applies the script to g1 (surviving nodes are compacted in stable id
// order). Throws on inapplicable ops, e.g. deleting a node with live edges.
LabeledGraph apply_edit_path(const LabeledGraph& g1, const EditPath& path);

// Exhaustive label-aware isomorphism test; intended for small graphs.
bool is_isomorphic(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace gedembed
