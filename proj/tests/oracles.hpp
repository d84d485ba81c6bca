#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here recomputes costs from first principles and shares no logic
// with the code under test.

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gedembed/graph.hpp"

namespace oracles {

// Edit cost of a mapping, recounted directly from the definition: one unit
// per relabel, node deletion, node insertion, unmapped g1 edge, unpreimaged
// g2 edge. to_g2[i] = -1 marks deletion.
inline int mapping_cost(const gedembed::LabeledGraph& g1, const gedembed::LabeledGraph& g2,
                        const std::vector<int>& to_g2) {
  int cost = 0;
  int matched_nodes = 0;
  for (int i = 0; i < g1.num_nodes(); ++i) {
    if (to_g2[static_cast<size_t>(i)] < 0) {
      cost += 1;
    } else {
      ++matched_nodes;
      if (g1.label(i) != g2.label(to_g2[static_cast<size_t>(i)])) cost += 1;
    }
  }
  cost += g2.num_nodes() - matched_nodes;

  std::set<std::pair<int, int>> g2_edges;
  for (auto [x, y] : g2.edges()) g2_edges.insert({std::min(x, y), std::max(x, y)});

  std::set<std::pair<int, int>> covered;
  for (auto [u, v] : g1.edges()) {
    int a = to_g2[static_cast<size_t>(u)], b = to_g2[static_cast<size_t>(v)];
    if (a >= 0 && b >= 0 && g2_edges.count({std::min(a, b), std::max(a, b)})) {
      covered.insert({std::min(a, b), std::max(a, b)});
    } else {
      cost += 1;
    }
  }
  cost += static_cast<int>(g2_edges.size() - covered.size());
  return cost;
}

// Exhaustive minimum over every mapping of g1's nodes into g2's nodes plus
// deletion. Exponential; callers keep graphs at or below 6 nodes.
inline int brute_force_ged(const gedembed::LabeledGraph& g1, const gedembed::LabeledGraph& g2) {
  int n1 = g1.num_nodes(), n2 = g2.num_nodes();
  std::vector<int> to_g2(static_cast<size_t>(n1), -1);
  std::vector<bool> used(static_cast<size_t>(n2), false);
  int best = std::numeric_limits<int>::max();
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n1) {
      best = std::min(best, mapping_cost(g1, g2, to_g2));
      return;
    }
    for (int j = 0; j < n2; ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      used[static_cast<size_t>(j)] = true;
      to_g2[static_cast<size_t>(i)] = j;
      self(self, i + 1);
      used[static_cast<size_t>(j)] = false;
    }
    to_g2[static_cast<size_t>(i)] = -1;
    self(self, i + 1);
  };
  recurse(recurse, 0);
  return best;
}

// Minimum assignment cost by trying every permutation. Callers keep n <= 7.
inline double brute_force_lsap(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0;
    for (int i = 0; i < n; ++i) total += cost[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracles
