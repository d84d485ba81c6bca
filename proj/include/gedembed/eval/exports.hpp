#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gedembed/eval/mds.hpp"
#include "gedembed/eval/ranking.hpp"
#include "gedembed/model/model.hpp"

namespace gedembed {

// CSV `gid,e0,...,e{D-1}`, 9 decimal digits, one row per embedding.
void save_embeddings_csv(const std::vector<GraphEmbedding>& embeddings, const std::string& path);
std::vector<GraphEmbedding> load_embeddings_csv(const std::string& path);

// CSV `query_gid,rank,gid,score`; ranks start at 1 per query.
void save_rankings_csv(const std::vector<Ranking>& rankings, const std::string& path);

struct ProjectedPoint {
  int gid = 0;
  double x = 0.0;
  double y = 0.0;
  std::optional<std::string> glabel;
};

// CSV `gid,x,y`, 9 decimal digits.
void save_projection_csv(const std::vector<ProjectedPoint>& points, const std::string& path);

// 800x800 scatter, one circle per graph, fill color hashed from glabel.
void save_projection_svg(const std::vector<ProjectedPoint>& points, const std::string& path);

}  // namespace gedembed
