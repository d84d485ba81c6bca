#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gedembed/eval/metrics.hpp"
#include "gedembed/eval/ranking.hpp"
#include "gedembed/ged/pairs.hpp"
#include "gedembed/graph.hpp"
#include "gedembed/model/model.hpp"
#include "gedembed/train/losses.hpp"

namespace gedembed {

// Named dataset slice used by the CLI; `all` is the unsplit corpus.
enum class SplitName { train, val, test, all };

SplitName parse_split_name(const std::string& token);
Dataset select_split(const Dataset& ds, SplitName name, std::uint64_t split_seed);

// Embeds every graph of the split in corpus order.
std::vector<GraphEmbedding> embed_dataset(const Dataset& split, const LabelVocab* vocab,
                                          ModelParams& params, const ModelConfig& cfg);

struct RankEval {
  EvalReport report;
  std::vector<Ranking> rankings;  // one per query, in query order
};

// Ranks each query against the corpus (minus the query itself) and scores the
// predicted ordering against ground-truth pair labels: mean tau-b and mean
// p@k over queries, mse over every scored pair. Distance mode reads the nged
// column, similarity mode the sim column; a pair absent from the table is a
// validation error.
RankEval evaluate_rankings(const std::vector<GraphEmbedding>& queries,
                           const std::vector<GraphEmbedding>& corpus, const PairTable& table,
                           LossMode mode, int k = 10);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Invariant sweep behind the `check` subcommand: solver bound sandwich,
// gradient fidelity plus a corrupted-gradient negative control, pooling
// permutation invariance, and a cost-matrix mutation probe that must leave
// the bipartite upper bound valid.
CheckReport self_check(std::uint64_t seed);

}  // namespace gedembed
