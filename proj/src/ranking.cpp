#include "gedembed/eval/ranking.hpp"

#include <algorithm>

#include "gedembed/errors.hpp"

namespace gedembed {

Ranking rank_query(const GraphEmbedding& query, const std::vector<GraphEmbedding>& corpus,
                   LossMode mode) {
  if (corpus.empty()) throw_validation("rank_query: empty corpus");
  Ranking r;
  r.query_gid = query.gid;
  r.mode = mode;
  r.items.reserve(corpus.size());
  for (const GraphEmbedding& g : corpus) {
    double score = mode == LossMode::distance ? predict_distance(query, g)
                                              : predict_similarity(query, g);
    r.items.push_back({g.gid, score});
  }
  bool ascending = mode == LossMode::distance;
  std::sort(r.items.begin(), r.items.end(), [ascending](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return ascending ? a.score < b.score : a.score > b.score;
    return a.gid < b.gid;
  });
  return r;
}

}  // namespace gedembed
