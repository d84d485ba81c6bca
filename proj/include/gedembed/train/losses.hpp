#pragma once

#include <string>
#include <vector>

#include "gedembed/ged/pairs.hpp"
#include "gedembed/tensor/tape.hpp"

namespace gedembed {

enum class LossMode { distance, similarity };

const char* to_string(LossMode m);
LossMode parse_loss_mode(const std::string& name);

// A sampled training batch; each element keeps the full pair record so either
// loss mode can read its label.
using BatchSample = std::vector<PairRecord>;

// Regression target for one pair: nged (or raw ged behind the flag) in
// distance mode, the sim column in similarity mode.
double pair_label(const PairRecord& rec, LossMode mode, bool use_raw_ged);

struct EmbedPair {
  std::vector<double> h_i, h_j;
  double label = 0.0;
};

// Mean over the batch of (||h_i - h_j||^2 - label)^2.
double distance_loss(const std::vector<EmbedPair>& batch);
// Mean over the batch of (h_i . h_j - label)^2.
double similarity_loss(const std::vector<EmbedPair>& batch);

// The same objective on a tape: embeddings come in batch order and the sum
// accumulates in that order, so the result is deterministic.
Var batch_loss_var(Tape& tape, const std::vector<std::pair<Var, Var>>& embeddings,
                   const std::vector<double>& labels, LossMode mode);

}  // namespace gedembed
