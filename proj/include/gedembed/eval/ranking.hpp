#pragma once

#include <vector>

#include "gedembed/model/model.hpp"
#include "gedembed/train/losses.hpp"

namespace gedembed {

struct RankedItem {
  int gid = 0;
  double score = 0.0;
};

struct Ranking {
  int query_gid = 0;
  LossMode mode = LossMode::distance;
  std::vector<RankedItem> items;  // ascending score for distance, descending for similarity
};

// Scores the query against every corpus embedding and sorts per the mode's
// direction; ties break by ascending gid.
Ranking rank_query(const GraphEmbedding& query, const std::vector<GraphEmbedding>& corpus,
                   LossMode mode);

}  // namespace gedembed
