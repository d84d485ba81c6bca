#include "gedembed/ged/bipartite.hpp"

#include <cmath>
#include <cstdlib>

#include "gedembed/ged/lsap.hpp"

namespace gedembed {

namespace {

constexpr double kForbidden = 1e9;

}  // namespace

std::vector<std::vector<double>> bipartite_cost_matrix(const LabeledGraph& g1,
                                                       const LabeledGraph& g2) {
  const int n = g1.num_nodes(), m = g2.num_nodes();
  std::vector<std::vector<double>> cost(static_cast<size_t>(n + m),
                                        std::vector<double>(static_cast<size_t>(n + m), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      cost[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (g1.label(i) != g2.label(j) ? 1.0 : 0.0) + std::abs(g1.degree(i) - g2.degree(j));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      cost[static_cast<size_t>(i)][static_cast<size_t>(m + k)] =
          i == k ? 1.0 + g1.degree(i) : kForbidden;
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < m; ++j)
      cost[static_cast<size_t>(n + l)][static_cast<size_t>(j)] =
          l == j ? 1.0 + g2.degree(j) : kForbidden;
  return cost;
}

NodeMapping bipartite_mapping(const LabeledGraph& g1, const LabeledGraph& g2) {
  LsapResult lsap = solve_lsap(bipartite_cost_matrix(g1, g2));
  NodeMapping m;
  m.to_g2.assign(static_cast<size_t>(g1.num_nodes()), NodeMapping::kDeleted);
  for (int i = 0; i < g1.num_nodes(); ++i) {
    int col = lsap.assignment[static_cast<size_t>(i)];
    if (col < g2.num_nodes()) m.to_g2[static_cast<size_t>(i)] = col;
  }
  return m;
}

GedResult ged_bipartite(const LabeledGraph& g1, const LabeledGraph& g2) {
  NodeMapping fwd = bipartite_mapping(g1, g2);
  NodeMapping rev = bipartite_mapping(g2, g1).inverted(g1.num_nodes());
  int cost_fwd = induced_edit_cost(g1, g2, fwd);
  int cost_rev = induced_edit_cost(g1, g2, rev);
  const NodeMapping& best = cost_fwd <= cost_rev ? fwd : rev;
  GedResult r;
  r.value = std::min(cost_fwd, cost_rev);
  r.bound = GedBound::upper;
  r.solver = GedSolver::bipartite;
  r.path = build_edit_path(g1, g2, best);
  return r;
}

}  // namespace gedembed
