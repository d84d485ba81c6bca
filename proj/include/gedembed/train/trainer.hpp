#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gedembed/ged/pairs.hpp"
#include "gedembed/graph.hpp"
#include "gedembed/model/model.hpp"
#include "gedembed/rng.hpp"
#include "gedembed/train/adam.hpp"
#include "gedembed/train/losses.hpp"

namespace gedembed {

// Supervised phase appended after `start_iter` unsupervised iterations; the
// remaining iterations optimize softmax cross-entropy through a class head of
// the given hidden widths (the class count is appended from the data).
struct FineTunePhase {
  long long start_iter = 0;
  std::vector<int> class_head_dims = {64};
  double lr = 0.001;
};

struct TrainConfig {
  int batch_pairs = 256;
  long long iterations = 20000;
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  LossMode loss_mode = LossMode::distance;
  std::uint64_t seed = 0;
  long long checkpoint_every = 100;
  int val_pair_cap = 1000;  // fixed validation pairs sampled once at startup
  bool use_raw_ged = false;
  std::optional<FineTunePhase> fine_tune;

  AdamConfig adam() const { return AdamConfig{lr, beta1, beta2, adam_eps}; }
  void validate() const;
};

struct TrainHistoryEntry {
  long long iter = 0;
  double train_loss = 0.0;
  std::optional<double> val_loss;
};

struct TrainHistory {
  std::vector<TrainHistoryEntry> entries;
  long long best_iter = -1;  // lowest validation loss; -1 when never measured
};

struct TrainResult {
  ModelParams params;
  TrainHistory history;
};

// Uniform with replacement; deterministic per rng state.
BatchSample sample_batch(const PairTable& pairs, int batch_pairs, Rng& rng);

// Mean batch loss of the current parameters over the given pairs.
double batch_loss(const BatchSample& batch, const Dataset& ds, const LabelVocab* vocab,
                  ModelParams& params, const ModelConfig& model_cfg, LossMode mode,
                  bool use_raw_ged = false);

// The training loop: sample, forward, loss, backward, Adam. Validation loss
// is measured every checkpoint_every iterations on a fixed subset of val
// pairs; the best-by-validation parameters are returned (final parameters
// when no validation pairs exist). With fine_tune set, the supervised phase
// continues from the selected parameters through the same history.
TrainResult train(const Dataset& train_split, const Dataset& val_split,
                  const PairTable& train_pairs, const PairTable& val_pairs,
                  const LabelVocab* vocab, const TrainConfig& cfg, const ModelConfig& model_cfg);

// Supervised classification phase on glabels. Attaches the class head when
// absent; embedding layers keep receiving gradients. Returns updated params.
ModelParams fine_tune(const ModelParams& params, const Dataset& train_split,
                      const LabelVocab* vocab, const TrainConfig& cfg,
                      const ModelConfig& model_cfg, long long iterations,
                      TrainHistory* history = nullptr, long long iter_offset = 0);

// Sorted unique glabels; the class index space of the fine-tune head.
std::vector<std::string> class_list(const Dataset& ds);

// CSV `iter,train_loss,val_loss`; the val cell is empty when unmeasured.
void save_train_history(const TrainHistory& history, const std::string& path);

}  // namespace gedembed
