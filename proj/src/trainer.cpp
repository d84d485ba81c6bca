#include "gedembed/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "gedembed/errors.hpp"

namespace gedembed {

void TrainConfig::validate() const {
  if (batch_pairs < 1) throw_config("train: batch_pairs must be >= 1");
  if (iterations < 0) throw_config("train: iterations must be >= 0");
  if (checkpoint_every < 1) throw_config("train: checkpoint_every must be >= 1");
  if (val_pair_cap < 1) throw_config("train: val_pair_cap must be >= 1");
  adam().validate();
  if (fine_tune) {
    if (fine_tune->start_iter < 0) throw_config("train: fine_tune.start_iter must be >= 0");
    for (int d : fine_tune->class_head_dims)
      if (d < 1) throw_config("train: fine_tune.class_head_dims entries must be >= 1");
    if (!(fine_tune->lr > 0.0) || !std::isfinite(fine_tune->lr))
      throw_config("train: fine_tune.lr must be positive");
  }
}

BatchSample sample_batch(const PairTable& pairs, int batch_pairs, Rng& rng) {
  if (pairs.records.empty()) throw_validation("sample_batch: empty pair table");
  if (batch_pairs < 1) throw_config("sample_batch: batch_pairs must be >= 1");
  BatchSample batch;
  batch.reserve(static_cast<size_t>(batch_pairs));
  for (int i = 0; i < batch_pairs; ++i)
    batch.push_back(pairs.records[static_cast<size_t>(rng.bounded(pairs.records.size()))]);
  return batch;
}

namespace {

struct GraphIndex {
  std::unordered_map<int, const LabeledGraph*> graphs;
  std::unordered_map<int, Tensor> features;

  static GraphIndex build(const Dataset& ds, const LabelVocab* vocab) {
    GraphIndex idx;
    for (const LabeledGraph& g : ds.graphs) {
      idx.graphs[g.gid()] = &g;
      idx.features.emplace(g.gid(), encode_features(g, vocab));
    }
    return idx;
  }

  const LabeledGraph& graph(int gid) const {
    auto it = graphs.find(gid);
    if (it == graphs.end())
      throw_validation("pair references gid " + std::to_string(gid) + " not in this split");
    return *it->second;
  }

  const Tensor& feats(int gid) const { return features.at(gid); }
};

Var build_batch_loss(Tape& tape, const BatchSample& batch, const GraphIndex& idx,
                     const TapeParams& tp, const ModelConfig& model_cfg, LossMode mode,
                     bool use_raw_ged) {
  std::unordered_map<int, Var> cache;
  auto embed = [&](int gid) {
    auto it = cache.find(gid);
    if (it != cache.end()) return it->second;
    Var h = graph_embed_var(tape, idx.graph(gid), idx.feats(gid), tp, model_cfg);
    cache.emplace(gid, h);
    return h;
  };
  std::vector<std::pair<Var, Var>> embeds;
  std::vector<double> labels;
  embeds.reserve(batch.size());
  labels.reserve(batch.size());
  for (const PairRecord& rec : batch) {
    embeds.emplace_back(embed(rec.gid_i), embed(rec.gid_j));
    labels.push_back(pair_label(rec, mode, use_raw_ged));
  }
  return batch_loss_var(tape, embeds, labels, mode);
}

void check_pair_coverage(const PairTable& pairs, const Dataset& split, const char* which) {
  std::unordered_set<int> gids;
  for (const LabeledGraph& g : split.graphs) gids.insert(g.gid());
  for (const PairRecord& r : pairs.records)
    if (!gids.count(r.gid_i) || !gids.count(r.gid_j))
      throw_validation("train: pair (" + std::to_string(r.gid_i) + "," +
                       std::to_string(r.gid_j) + ") references a gid outside the " +
                       std::string(which) + " split");
}

// Fixed validation subset, chosen once; table order is preserved.
PairTable select_val_pairs(const PairTable& val_pairs, int cap, std::uint64_t seed) {
  size_t n = val_pairs.records.size();
  if (n <= static_cast<size_t>(cap)) return val_pairs;
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  Rng rng = Rng::derived(seed, "valpairs");
  for (size_t i = 0; i < static_cast<size_t>(cap); ++i) {
    size_t j = i + static_cast<size_t>(rng.bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(static_cast<size_t>(cap));
  std::sort(idx.begin(), idx.end());
  PairTable out;
  for (size_t i : idx) out.records.push_back(val_pairs.records[i]);
  return out;
}

void check_labels_present(const PairTable& pairs, LossMode mode, bool use_raw_ged) {
  for (const PairRecord& r : pairs.records) (void)pair_label(r, mode, use_raw_ged);
}

}  // namespace

double batch_loss(const BatchSample& batch, const Dataset& ds, const LabelVocab* vocab,
                  ModelParams& params, const ModelConfig& model_cfg, LossMode mode,
                  bool use_raw_ged) {
  GraphIndex idx = GraphIndex::build(ds, vocab);
  Tape tape;
  TapeParams tp = register_params(tape, params, model_cfg);
  Var loss = build_batch_loss(tape, batch, idx, tp, model_cfg, mode, use_raw_ged);
  return tape.value(loss).scalar_value();
}

TrainResult train(const Dataset& train_split, const Dataset& val_split,
                  const PairTable& train_pairs, const PairTable& val_pairs,
                  const LabelVocab* vocab, const TrainConfig& cfg, const ModelConfig& model_cfg) {
  cfg.validate();
  model_cfg.validate();
  check_pair_coverage(train_pairs, train_split, "training");
  check_pair_coverage(val_pairs, val_split, "validation");
  check_labels_present(train_pairs, cfg.loss_mode, cfg.use_raw_ged);

  TrainResult result{init_params(model_cfg, cfg.seed), {}};
  if (cfg.iterations == 0) return result;
  if (train_pairs.records.empty()) throw_validation("train: no training pairs");

  GraphIndex train_idx = GraphIndex::build(train_split, vocab);
  GraphIndex val_idx = GraphIndex::build(val_split, vocab);
  PairTable fixed_val = select_val_pairs(val_pairs, cfg.val_pair_cap, cfg.seed);
  check_labels_present(fixed_val, cfg.loss_mode, cfg.use_raw_ged);

  long long unsup_iters = cfg.iterations;
  if (cfg.fine_tune)
    unsup_iters = std::min(cfg.iterations, std::max(0LL, cfg.fine_tune->start_iter));

  ModelParams& params = result.params;
  std::vector<ParamRef> refs = param_refs(params, model_cfg);
  OptimizerState state = init_optimizer(refs);
  AdamConfig adam_cfg = cfg.adam();
  Rng batch_rng = Rng::derived(cfg.seed, "batch");

  double best_val = std::numeric_limits<double>::infinity();
  ModelParams best_params;
  bool have_best = false;

  for (long long iter = 1; iter <= unsup_iters; ++iter) {
    BatchSample batch = sample_batch(train_pairs, cfg.batch_pairs, batch_rng);
    Tape tape;
    TapeParams tp = register_params(tape, params, model_cfg);
    Var loss =
        build_batch_loss(tape, batch, train_idx, tp, model_cfg, cfg.loss_mode, cfg.use_raw_ged);
    double train_loss = tape.value(loss).scalar_value();
    GradientMap grads = tape.backward(loss);
    adam_step(refs, grads, state, adam_cfg);

    TrainHistoryEntry entry{iter, train_loss, std::nullopt};
    if (!fixed_val.records.empty() &&
        (iter % cfg.checkpoint_every == 0 || iter == unsup_iters)) {
      Tape vtape;
      TapeParams vtp = register_params(vtape, params, model_cfg);
      Var vloss = build_batch_loss(vtape, fixed_val.records, val_idx, vtp, model_cfg,
                                   cfg.loss_mode, cfg.use_raw_ged);
      double vl = vtape.value(vloss).scalar_value();
      entry.val_loss = vl;
      if (vl < best_val) {
        best_val = vl;
        result.history.best_iter = iter;
        best_params = params;
        have_best = true;
      }
    }
    result.history.entries.push_back(entry);
  }
  if (have_best) params = std::move(best_params);

  if (cfg.fine_tune && cfg.iterations > unsup_iters)
    result.params = fine_tune(result.params, train_split, vocab, cfg, model_cfg,
                              cfg.iterations - unsup_iters, &result.history, unsup_iters);
  return result;
}

std::vector<std::string> class_list(const Dataset& ds) {
  std::set<std::string> classes;
  for (const LabeledGraph& g : ds.graphs) {
    if (!g.glabel())
      throw_validation("fine_tune: graph gid " + std::to_string(g.gid()) + " has no glabel");
    classes.insert(*g.glabel());
  }
  return {classes.begin(), classes.end()};
}

ModelParams fine_tune(const ModelParams& start, const Dataset& train_split,
                      const LabelVocab* vocab, const TrainConfig& cfg,
                      const ModelConfig& model_cfg, long long iterations, TrainHistory* history,
                      long long iter_offset) {
  cfg.validate();
  model_cfg.validate();
  if (train_split.graphs.empty()) throw_validation("fine_tune: empty training split");
  if (iterations < 0) throw_config("fine_tune: iterations must be >= 0");

  std::vector<std::string> classes = class_list(train_split);
  int num_classes = static_cast<int>(classes.size());
  std::unordered_map<std::string, int> class_of;
  for (int c = 0; c < num_classes; ++c) class_of[classes[static_cast<size_t>(c)]] = c;

  ModelParams params = start;
  if (!params.has_class_head()) {
    std::vector<int> dims{model_cfg.embed_dim};
    std::vector<int> hidden = cfg.fine_tune ? cfg.fine_tune->class_head_dims
                                            : FineTunePhase{}.class_head_dims;
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(num_classes);
    Rng rng = Rng::derived(cfg.seed, "classhead");
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
      params.class_w.push_back(glorot_uniform(dims[i], dims[i + 1], rng));
      params.class_b.emplace_back(1, dims[i + 1]);
    }
  } else if (params.class_w.back().cols != num_classes) {
    throw_validation("fine_tune: existing class head ends at " +
                     std::to_string(params.class_w.back().cols) + " logits, expected " +
                     std::to_string(num_classes));
  }

  double lr = cfg.fine_tune ? cfg.fine_tune->lr : cfg.lr;
  AdamConfig adam_cfg{lr, cfg.beta1, cfg.beta2, cfg.adam_eps};
  std::vector<ParamRef> refs = param_refs(params, model_cfg);
  OptimizerState state = init_optimizer(refs);
  GraphIndex idx = GraphIndex::build(train_split, vocab);
  Rng rng = Rng::derived(cfg.seed, "finetune");
  size_t n = train_split.graphs.size();

  for (long long s = 1; s <= iterations; ++s) {
    Tape tape;
    TapeParams tp = register_params(tape, params, model_cfg);
    std::unordered_map<int, Var> cache;
    Var total;
    for (int b = 0; b < cfg.batch_pairs; ++b) {
      const LabeledGraph& g = train_split.graphs[static_cast<size_t>(rng.bounded(n))];
      auto it = cache.find(g.gid());
      Var h;
      if (it != cache.end()) {
        h = it->second;
      } else {
        h = graph_embed_var(tape, g, idx.feats(g.gid()), tp, model_cfg);
        cache.emplace(g.gid(), h);
      }
      Var logits = class_logits_var(tape, h, tp);
      Var xent = softmax_xent(logits, class_of.at(*g.glabel()));
      total = b == 0 ? xent : add(total, xent);
    }
    Var loss = scale(total, 1.0 / static_cast<double>(cfg.batch_pairs));
    double loss_value = tape.value(loss).scalar_value();
    GradientMap grads = tape.backward(loss);
    adam_step(refs, grads, state, adam_cfg);
    if (history) history->entries.push_back({iter_offset + s, loss_value, std::nullopt});
  }
  return params;
}

void save_train_history(const TrainHistory& history, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_validation("cannot open history file for writing: " + path);
  out << "iter,train_loss,val_loss\n";
  char buf[64];
  for (const TrainHistoryEntry& e : history.entries) {
    std::snprintf(buf, sizeof(buf), "%.9f", e.train_loss);
    out << e.iter << ',' << buf << ',';
    if (e.val_loss) {
      std::snprintf(buf, sizeof(buf), "%.9f", *e.val_loss);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw_resource("failed writing history file: " + path);
}

}  // namespace gedembed
