#pragma once

#include <array>
#include <vector>

#include "gedembed/model/model.hpp"

namespace gedembed {

struct Projection {
  std::vector<std::array<double, 2>> coords;
  bool degenerate = false;  // all inputs identical; coordinates are all zero
};

// Classical MDS to two dimensions: double-center the squared-distance matrix,
// take the top-2 eigenpairs, scale by sqrt(eigenvalue). Each axis's sign is
// fixed by making its largest-magnitude coordinate positive.
Projection project_2d(const std::vector<GraphEmbedding>& embeddings);

}  // namespace gedembed
