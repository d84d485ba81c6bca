#include "gedembed/ged/mapping.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gedembed/errors.hpp"

namespace gedembed {

const char* to_string(GedBound b) {
  switch (b) {
    case GedBound::exact: return "exact";
    case GedBound::upper: return "upper";
    case GedBound::lower: return "lower";
  }
  return "?";
}

const char* to_string(GedSolver s) {
  switch (s) {
    case GedSolver::astar: return "astar";
    case GedSolver::beam: return "beam";
    case GedSolver::bipartite: return "bipartite";
    case GedSolver::hed: return "hed";
    case GedSolver::ensemble: return "ensemble";
  }
  return "?";
}

NodeMapping NodeMapping::inverted(int g2_nodes) const {
  NodeMapping inv;
  inv.to_g2.assign(static_cast<size_t>(g2_nodes), kDeleted);
  for (int i = 0; i < size(); ++i) {
    int j = to_g2[static_cast<size_t>(i)];
    if (j != kDeleted) inv.to_g2[static_cast<size_t>(j)] = i;
  }
  return inv;
}

void validate_mapping(const LabeledGraph& g1, const LabeledGraph& g2, const NodeMapping& m) {
  if (m.size() != g1.num_nodes()) throw_validation("mapping: not total over the first graph");
  std::vector<bool> used(static_cast<size_t>(g2.num_nodes()), false);
  for (int j : m.to_g2) {
    if (j == NodeMapping::kDeleted) continue;
    if (j < 0 || j >= g2.num_nodes()) throw_validation("mapping: target out of range");
    if (used[static_cast<size_t>(j)]) throw_validation("mapping: not injective");
    used[static_cast<size_t>(j)] = true;
  }
}

int induced_edit_cost(const LabeledGraph& g1, const LabeledGraph& g2, const NodeMapping& m) {
  validate_mapping(g1, g2, m);
  int relabels = 0, deleted = 0, matched = 0;
  for (int i = 0; i < g1.num_nodes(); ++i) {
    int j = m.to_g2[static_cast<size_t>(i)];
    if (j == NodeMapping::kDeleted) {
      ++deleted;
    } else {
      ++matched;
      if (g1.label(i) != g2.label(j)) ++relabels;
    }
  }
  int inserted = g2.num_nodes() - matched;

  int matched_edges = 0;
  for (auto [u, v] : g1.edges()) {
    int mu = m.to_g2[static_cast<size_t>(u)];
    int mv = m.to_g2[static_cast<size_t>(v)];
    if (mu != NodeMapping::kDeleted && mv != NodeMapping::kDeleted && g2.has_edge(mu, mv))
      ++matched_edges;
  }
  int edge_cost = g1.num_edges() + g2.num_edges() - 2 * matched_edges;
  return relabels + deleted + inserted + edge_cost;
}

EditPath build_edit_path(const LabeledGraph& g1, const LabeledGraph& g2, const NodeMapping& m) {
  validate_mapping(g1, g2, m);
  EditPath path;
  NodeMapping from_g2 = m.inverted(g2.num_nodes());

  // Edges of g1 whose image is not an edge of g2.
  for (auto [u, v] : g1.edges()) {
    int mu = m.to_g2[static_cast<size_t>(u)];
    int mv = m.to_g2[static_cast<size_t>(v)];
    bool kept = mu != NodeMapping::kDeleted && mv != NodeMapping::kDeleted && g2.has_edge(mu, mv);
    if (!kept) path.ops.push_back(EdgeDelete{u, v});
  }
  for (int i = 0; i < g1.num_nodes(); ++i)
    if (m.to_g2[static_cast<size_t>(i)] == NodeMapping::kDeleted) path.ops.push_back(NodeDelete{i});
  for (int i = 0; i < g1.num_nodes(); ++i) {
    int j = m.to_g2[static_cast<size_t>(i)];
    if (j != NodeMapping::kDeleted && g1.label(i) != g2.label(j))
      path.ops.push_back(NodeRelabel{i, g2.label(j)});
  }
  // Fresh ids for inserted nodes, in g2 id order.
  std::vector<int> fresh_id(static_cast<size_t>(g2.num_nodes()), -1);
  int next_id = g1.num_nodes();
  for (int j = 0; j < g2.num_nodes(); ++j) {
    if (from_g2.to_g2[static_cast<size_t>(j)] == NodeMapping::kDeleted) {
      fresh_id[static_cast<size_t>(j)] = next_id++;
      path.ops.push_back(NodeInsert{g2.label(j)});
    }
  }
  auto path_id = [&](int j) {
    int pre = from_g2.to_g2[static_cast<size_t>(j)];
    return pre != NodeMapping::kDeleted ? pre : fresh_id[static_cast<size_t>(j)];
  };
  for (auto [x, y] : g2.edges()) {
    int px = from_g2.to_g2[static_cast<size_t>(x)];
    int py = from_g2.to_g2[static_cast<size_t>(y)];
    bool kept = px != NodeMapping::kDeleted && py != NodeMapping::kDeleted && g1.has_edge(px, py);
    if (!kept) path.ops.push_back(EdgeInsert{path_id(x), path_id(y)});
  }
  return path;
}

namespace {

struct WorkingGraph {
  std::vector<std::string> labels;
  std::vector<bool> alive;
  std::set<std::pair<int, int>> edges;

  bool valid_node(int id) const {
    return id >= 0 && id < static_cast<int>(labels.size()) && alive[static_cast<size_t>(id)];
  }
  int live_degree(int id) const {
    int d = 0;
    for (auto& [u, v] : edges)
      if (u == id || v == id) ++d;
    return d;
  }
};

}  // namespace

LabeledGraph apply_edit_path(const LabeledGraph& g1, const EditPath& path) {
  WorkingGraph w;
  w.labels = g1.labels();
  w.alive.assign(w.labels.size(), true);
  for (auto e : g1.edges()) w.edges.insert(e);

  for (const EditOp& op : path.ops) {
    if (const auto* ins = std::get_if<NodeInsert>(&op)) {
      w.labels.push_back(ins->label);
      w.alive.push_back(true);
    } else if (const auto* del = std::get_if<NodeDelete>(&op)) {
      if (!w.valid_node(del->id)) throw_validation("edit path: deleting unknown node");
      if (w.live_degree(del->id) > 0) throw_validation("edit path: deleting node with live edges");
      w.alive[static_cast<size_t>(del->id)] = false;
    } else if (const auto* rel = std::get_if<NodeRelabel>(&op)) {
      if (!w.valid_node(rel->id)) throw_validation("edit path: relabeling unknown node");
      w.labels[static_cast<size_t>(rel->id)] = rel->new_label;
    } else if (const auto* ei = std::get_if<EdgeInsert>(&op)) {
      int u = std::min(ei->u, ei->v), v = std::max(ei->u, ei->v);
      if (!w.valid_node(u) || !w.valid_node(v) || u == v)
        throw_validation("edit path: bad edge insertion endpoints");
      if (!w.edges.insert({u, v}).second) throw_validation("edit path: inserting existing edge");
    } else if (const auto* ed = std::get_if<EdgeDelete>(&op)) {
      int u = std::min(ed->u, ed->v), v = std::max(ed->u, ed->v);
      if (w.edges.erase({u, v}) == 0) throw_validation("edit path: deleting missing edge");
    }
  }

  // Compact the surviving nodes in stable id order.
  std::vector<int> compact(w.labels.size(), -1);
  std::vector<std::string> labels;
  for (size_t i = 0; i < w.labels.size(); ++i) {
    if (w.alive[i]) {
      compact[i] = static_cast<int>(labels.size());
      labels.push_back(w.labels[i]);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : w.edges) edges.emplace_back(compact[static_cast<size_t>(u)], compact[static_cast<size_t>(v)]);
  return LabeledGraph(g1.gid(), std::move(labels), std::move(edges), g1.glabel());
}

namespace {

bool extend_isomorphism(const LabeledGraph& a, const LabeledGraph& b, std::vector<int>& map_ab,
                        std::vector<bool>& used, int depth) {
  int n = a.num_nodes();
  if (depth == n) return true;
  for (int j = 0; j < n; ++j) {
    if (used[static_cast<size_t>(j)]) continue;
    if (a.label(depth) != b.label(j)) continue;
    if (a.degree(depth) != b.degree(j)) continue;
    bool ok = true;
    for (int prev = 0; prev < depth && ok; ++prev)
      if (a.has_edge(prev, depth) != b.has_edge(map_ab[static_cast<size_t>(prev)], j)) ok = false;
    if (!ok) continue;
    map_ab[static_cast<size_t>(depth)] = j;
    used[static_cast<size_t>(j)] = true;
    if (extend_isomorphism(a, b, map_ab, used, depth + 1)) return true;
    used[static_cast<size_t>(j)] = false;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  auto signature = [](const LabeledGraph& g) {
    std::multiset<std::pair<std::string, int>> sig;
    for (int i = 0; i < g.num_nodes(); ++i) sig.insert({g.label(i), g.degree(i)});
    return sig;
  };
  if (signature(a) != signature(b)) return false;
  std::vector<int> map_ab(static_cast<size_t>(a.num_nodes()), -1);
  std::vector<bool> used(static_cast<size_t>(a.num_nodes()), false);
  return extend_isomorphism(a, b, map_ab, used, 0);
}

}  // namespace gedembed
