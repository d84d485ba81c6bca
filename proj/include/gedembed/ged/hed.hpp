#pragma once

#include "gedembed/ged/mapping.hpp"

namespace gedembed {

// Hausdorff-style lower bound on GED. Each node picks its cheapest match in
// the other graph or deletion, with edge terms halved so no edit is counted
// more than its unit cost across both sums. Symmetric, quadratic time.
GedResult hed_lower(const LabeledGraph& g1, const LabeledGraph& g2);

}  // namespace gedembed
