#pragma once

#include <limits>

#include "gedembed/ged/mapping.hpp"

namespace gedembed {

inline constexpr int kDefaultNodeLimit = 10;
inline constexpr long long kDefaultExpansionLimit = 5'000'000;

// Width sentinel that makes beam search exhaustive.
inline constexpr int kBeamWidthInf = std::numeric_limits<int>::max();

// Exact GED via A* over partial node mappings. Nodes of g1 are decided in
// descending-degree order, ties by id. The heuristic is the label-multiset
// mismatch count over undecided nodes, which ignores edges and is admissible.
// Throws a validation error when either graph exceeds node_limit and a
// resource error when the expansion budget runs out.
GedResult ged_exact_astar(const LabeledGraph& g1, const LabeledGraph& g2,
                          int node_limit = kDefaultNodeLimit,
                          long long expansion_limit = kDefaultExpansionLimit);

// Upper bound via level-synchronous beam search over the same tree, keeping
// the `width` best partial mappings per depth. Evaluates both argument orders
// and returns the minimum. width = kBeamWidthInf reproduces the exact value.
GedResult ged_beam(const LabeledGraph& g1, const LabeledGraph& g2, int width);

}  // namespace gedembed
