#pragma once

#include <vector>

#include "gedembed/ged/mapping.hpp"

namespace gedembed {

// Standard (n+m) x (n+m) assignment matrix: substitution block uses label
// cost plus degree difference, deletion/insertion diagonals cost 1 + degree,
// their off-diagonals a large finite penalty, and the eps-eps block is free.
std::vector<std::vector<double>> bipartite_cost_matrix(const LabeledGraph& g1,
                                                       const LabeledGraph& g2);

// Mapping read off the optimal assignment for the matrix above.
NodeMapping bipartite_mapping(const LabeledGraph& g1, const LabeledGraph& g2);

// Upper bound on GED: the induced edit cost of the assignment mapping, which
// stays an upper bound no matter how the cost matrix guides the assignment.
// Evaluates both argument orders and returns the minimum.
GedResult ged_bipartite(const LabeledGraph& g1, const LabeledGraph& g2);

}  // namespace gedembed
