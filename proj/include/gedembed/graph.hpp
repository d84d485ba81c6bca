#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gedembed/tensor/tensor.hpp"

namespace gedembed {

// Undirected graph with string node labels. Node ids are always 0..N-1;
// edges are stored canonically as (u, v) with u < v, sorted and unique.
// Immutable after construction.
class LabeledGraph {
 public:
  LabeledGraph(int gid, std::vector<std::string> node_labels,
               std::vector<std::pair<int, int>> edges,
               std::optional<std::string> glabel = std::nullopt);

  int gid() const { return gid_; }
  int num_nodes() const { return static_cast<int>(labels_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& label(int node) const { return labels_[static_cast<size_t>(node)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::optional<std::string>& glabel() const { return glabel_; }
  const std::vector<int>& neighbors(int node) const { return adjacency_[static_cast<size_t>(node)]; }
  int degree(int node) const { return static_cast<int>(adjacency_[static_cast<size_t>(node)].size()); }
  bool has_edge(int u, int v) const;

  // Dense adjacency, used as a constant by the network forward pass.
  Tensor adjacency_matrix() const;

 private:
  int gid_;
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> edges_;
  std::optional<std::string> glabel_;
  std::vector<std::vector<int>> adjacency_;
};

// Label -> one-hot index mapping. Labels are sorted lexicographically so the
// feature layout is deterministic; index len(labels) is reserved for labels
// never seen at build time.
struct LabelVocab {
  std::vector<std::string> labels;

  int oov_index() const { return static_cast<int>(labels.size()); }
  int onehot_width() const { return static_cast<int>(labels.size()) + 1; }
  int index_of(const std::string& label) const;
};

struct Dataset {
  std::vector<LabeledGraph> graphs;
  std::optional<LabelVocab> vocab;

  int size() const { return static_cast<int>(graphs.size()); }
  const LabeledGraph* find(int gid) const;
  const LabeledGraph& by_gid(int gid) const;
  // True when every node label in the corpus is the empty string.
  bool is_unlabeled() const;
  void validate_unique_gids() const;
};

struct SplitSpec {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
  uint64_t seed = 0;
};

struct DatasetSplits {
  Dataset train;
  Dataset val;
  Dataset test;
};

// Shuffles gids with the split seed and cuts floor(val*n) and floor(test*n)
// graphs for val/test; the remainder goes to train.
DatasetSplits split_dataset(const Dataset& ds, const SplitSpec& spec);

LabelVocab build_label_vocab(const Dataset& ds);

// One-hot rows per node when a vocab is given; a single constant 1.0 column
// otherwise.
Tensor encode_features(const LabeledGraph& g, const LabelVocab* vocab);

// Relabels node ids through a bijection: node i becomes perm[i].
LabeledGraph permute_nodes(const LabeledGraph& g, const std::vector<int>& perm);

}  // namespace gedembed
