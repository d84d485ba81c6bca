#pragma once

#include <vector>

namespace gedembed {

struct LsapResult {
  std::vector<int> assignment;  // assignment[row] = column
  double total_cost = 0.0;
};

// Minimum-cost perfect matching on a square cost matrix.
// Costs must be finite; use a large finite penalty to forbid a cell.
LsapResult solve_lsap(const std::vector<std::vector<double>>& cost);

}  // namespace gedembed
