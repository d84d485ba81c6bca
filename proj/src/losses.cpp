#include "gedembed/train/losses.hpp"

#include <cmath>

#include "gedembed/errors.hpp"

namespace gedembed {

const char* to_string(LossMode m) {
  return m == LossMode::distance ? "distance" : "similarity";
}

LossMode parse_loss_mode(const std::string& name) {
  if (name == "distance") return LossMode::distance;
  if (name == "similarity") return LossMode::similarity;
  throw_config("unknown loss mode '" + name + "' (expected distance, similarity)");
}

double pair_label(const PairRecord& rec, LossMode mode, bool use_raw_ged) {
  if (mode == LossMode::similarity) {
    if (!rec.sim)
      throw_validation("pair (" + std::to_string(rec.gid_i) + "," + std::to_string(rec.gid_j) +
                       ") has no sim label required by similarity loss");
    return *rec.sim;
  }
  return use_raw_ged ? static_cast<double>(rec.ged) : rec.nged;
}

namespace {

double embed_batch_loss(const std::vector<EmbedPair>& batch, bool distance) {
  if (batch.empty()) throw_validation("loss: empty batch");
  double total = 0.0;
  for (const EmbedPair& p : batch) {
    if (p.h_i.size() != p.h_j.size()) throw_validation("loss: embedding dims differ within a pair");
    if (!std::isfinite(p.label)) throw_validation("loss: non-finite pair label");
    double score = 0.0;
    for (size_t c = 0; c < p.h_i.size(); ++c) {
      if (distance) {
        double d = p.h_i[c] - p.h_j[c];
        score += d * d;
      } else {
        score += p.h_i[c] * p.h_j[c];
      }
    }
    double err = score - p.label;
    total += err * err;
  }
  return total / static_cast<double>(batch.size());
}

}  // namespace

double distance_loss(const std::vector<EmbedPair>& batch) { return embed_batch_loss(batch, true); }

double similarity_loss(const std::vector<EmbedPair>& batch) {
  return embed_batch_loss(batch, false);
}

Var batch_loss_var(Tape& tape, const std::vector<std::pair<Var, Var>>& embeddings,
                   const std::vector<double>& labels, LossMode mode) {
  if (embeddings.empty()) throw_validation("loss: empty batch");
  if (embeddings.size() != labels.size())
    throw_validation("loss: label count does not match pair count");
  Var total;
  for (size_t i = 0; i < embeddings.size(); ++i) {
    Var score = mode == LossMode::distance
                    ? squared_l2_rowdiff(embeddings[i].first, embeddings[i].second)
                    : dot(embeddings[i].first, embeddings[i].second);
    Var err = square(sub(score, tape.constant(Tensor::scalar(labels[i]))));
    total = i == 0 ? err : add(total, err);
  }
  return scale(total, 1.0 / static_cast<double>(embeddings.size()));
}

}  // namespace gedembed
