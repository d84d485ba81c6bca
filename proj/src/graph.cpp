#include "gedembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gedembed/errors.hpp"
#include "gedembed/rng.hpp"

namespace gedembed {

LabeledGraph::LabeledGraph(int gid, std::vector<std::string> node_labels,
                           std::vector<std::pair<int, int>> edges,
                           std::optional<std::string> glabel)
    : gid_(gid), labels_(std::move(node_labels)), edges_(std::move(edges)), glabel_(std::move(glabel)) {
  if (gid_ < 0) throw_validation("graph " + std::to_string(gid_) + ": gid must be non-negative");
  int n = num_nodes();
  if (n < 1) throw_validation("graph " + std::to_string(gid_) + ": must have at least one node");
  for (auto& [u, v] : edges_) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw_validation("graph " + std::to_string(gid_) + ": edge endpoint out of range");
    if (u == v) throw_validation("graph " + std::to_string(gid_) + ": self-loop on node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1])
      throw_validation("graph " + std::to_string(gid_) + ": duplicate edge (" +
                       std::to_string(edges_[i].first) + "," + std::to_string(edges_[i].second) + ")");
  adjacency_.assign(static_cast<size_t>(n), {});
  for (auto& [u, v] : edges_) {
    adjacency_[static_cast<size_t>(u)].push_back(v);
    adjacency_[static_cast<size_t>(v)].push_back(u);
  }
}

bool LabeledGraph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

Tensor LabeledGraph::adjacency_matrix() const {
  int n = num_nodes();
  Tensor a(n, n);
  for (auto& [u, v] : edges_) {
    a.at(u, v) = 1.0;
    a.at(v, u) = 1.0;
  }
  return a;
}

int LabelVocab::index_of(const std::string& label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it != labels.end() && *it == label) return static_cast<int>(it - labels.begin());
  return oov_index();
}

const LabeledGraph* Dataset::find(int gid) const {
  for (const auto& g : graphs)
    if (g.gid() == gid) return &g;
  return nullptr;
}

const LabeledGraph& Dataset::by_gid(int gid) const {
  const LabeledGraph* g = find(gid);
  if (!g) throw_validation("dataset: no graph with gid " + std::to_string(gid));
  return *g;
}

bool Dataset::is_unlabeled() const {
  for (const auto& g : graphs)
    for (const auto& l : g.labels())
      if (!l.empty()) return false;
  return true;
}

void Dataset::validate_unique_gids() const {
  std::unordered_set<int> seen;
  for (const auto& g : graphs)
    if (!seen.insert(g.gid()).second)
      throw_validation("dataset: duplicate gid " + std::to_string(g.gid()));
}

DatasetSplits split_dataset(const Dataset& ds, const SplitSpec& spec) {
  double sum = spec.train + spec.val + spec.test;
  if (std::abs(sum - 1.0) > 1e-9) throw_config("split: ratios must sum to 1");
  for (double r : {spec.train, spec.val, spec.test})
    if (r <= 0.0 || r >= 1.0) throw_config("split: each ratio must be in (0,1)");
  int n = ds.size();
  if (n < 5) throw_validation("split: dataset must have at least 5 graphs");

  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  Rng rng = Rng::derived(spec.seed, "split");
  rng.shuffle(order);

  int n_val = static_cast<int>(spec.val * n);
  int n_test = static_cast<int>(spec.test * n);
  int n_train = n - n_val - n_test;  // remainder lands in train

  DatasetSplits out;
  for (int i = 0; i < n; ++i) {
    const LabeledGraph& g = ds.graphs[static_cast<size_t>(order[static_cast<size_t>(i)])];
    if (i < n_train)
      out.train.graphs.push_back(g);
    else if (i < n_train + n_val)
      out.val.graphs.push_back(g);
    else
      out.test.graphs.push_back(g);
  }
  return out;
}

LabelVocab build_label_vocab(const Dataset& ds) {
  std::vector<std::string> labels;
  for (const auto& g : ds.graphs)
    for (const auto& l : g.labels()) labels.push_back(l);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return LabelVocab{std::move(labels)};
}

Tensor encode_features(const LabeledGraph& g, const LabelVocab* vocab) {
  int n = g.num_nodes();
  if (!vocab) return Tensor(n, 1, 1.0);
  Tensor f(n, vocab->onehot_width());
  for (int i = 0; i < n; ++i) f.at(i, vocab->index_of(g.label(i))) = 1.0;
  return f;
}

LabeledGraph permute_nodes(const LabeledGraph& g, const std::vector<int>& perm) {
  int n = g.num_nodes();
  if (static_cast<int>(perm.size()) != n) throw_validation("permute_nodes: permutation size mismatch");
  std::vector<bool> hit(static_cast<size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || hit[static_cast<size_t>(p)])
      throw_validation("permute_nodes: not a bijection on 0..N-1");
    hit[static_cast<size_t>(p)] = true;
  }
  std::vector<std::string> labels(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<size_t>(perm[static_cast<size_t>(i)])] = g.label(i);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges().size());
  for (auto [u, v] : g.edges())
    edges.emplace_back(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
  return LabeledGraph(g.gid(), std::move(labels), std::move(edges), g.glabel());
}

}  // namespace gedembed
