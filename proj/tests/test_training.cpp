#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "gedembed/errors.hpp"
#include "gedembed/ged/pairs.hpp"
#include "gedembed/synth.hpp"
#include "gedembed/tensor/grad_check.hpp"
#include "gedembed/train/adam.hpp"
#include "gedembed/train/losses.hpp"
#include "gedembed/train/trainer.hpp"

using namespace gedembed;

namespace {

PairRecord make_record(int gid_i, int gid_j, int ged_value, int n_i, int n_j,
                       std::optional<double> sim = std::nullopt) {
  PairRecord r;
  r.gid_i = gid_i;
  r.gid_j = gid_j;
  r.ged = ged_value;
  r.nged = nged(ged_value, n_i, n_j);
  r.sim = sim;
  return r;
}

ModelConfig desk_model(int input_dim) {
  ModelConfig cfg;
  cfg.gin_dims = {8, 4};
  cfg.head_hidden = {6};
  cfg.embed_dim = 4;
  cfg.input_dim = input_dim;
  return cfg;
}

struct Corpus {
  Dataset full;
  DatasetSplits splits;
  LabelVocab vocab;
  PairTable train_pairs;
  PairTable val_pairs;
};

Corpus make_corpus(uint64_t seed) {
  std::vector<FamilySpec> specs(2);
  specs[0].family = GraphFamily::path;
  specs[0].count = 10;
  specs[0].min_size = 4;
  specs[0].max_size = 6;
  specs[0].alphabet = {"A", "B"};
  specs[1] = specs[0];
  specs[1].family = GraphFamily::cycle;
  Corpus c;
  c.full = synth_generate(specs, seed);
  c.vocab = build_label_vocab(c.full);
  c.splits = split_dataset(c.full, SplitSpec{0.6, 0.2, 0.2, seed});
  PairJobConfig job;
  job.beam_width = 20;
  c.train_pairs = ground_truth_pairs(c.splits.train, job);
  c.val_pairs = ground_truth_pairs(c.splits.val, job);
  return c;
}

bool params_equal(ModelParams& a, ModelParams& b, const ModelConfig& cfg) {
  auto ra = param_refs(a, cfg);
  auto rb = param_refs(b, cfg);
  if (ra.size() != rb.size()) return false;
  for (size_t i = 0; i < ra.size(); ++i) {
    if (!ra[i].tensor->same_shape(*rb[i].tensor)) return false;
    for (size_t j = 0; j < ra[i].tensor->data.size(); ++j)
      if (ra[i].tensor->data[j] != rb[i].tensor->data[j]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sample_batch draws uniformly with replacement") {
  PairTable one;
  one.records.push_back(make_record(0, 1, 2, 4, 4));

  SUBCASE("single pair repeats") {
    Rng rng(0);
    BatchSample b = sample_batch(one, 4, rng);
    REQUIRE(b.size() == 4);
    for (const PairRecord& r : b) {
      CHECK(r.gid_i == 0);
      CHECK(r.gid_j == 1);
    }
  }

  SUBCASE("same seed gives the same batch") {
    PairTable table;
    for (int j = 1; j <= 6; ++j) table.records.push_back(make_record(0, j, j, 4, 4));
    Rng r1(7), r2(7);
    BatchSample b1 = sample_batch(table, 10, r1);
    BatchSample b2 = sample_batch(table, 10, r2);
    REQUIRE(b1.size() == b2.size());
    for (size_t i = 0; i < b1.size(); ++i) CHECK(b1[i].gid_j == b2[i].gid_j);
  }

  SUBCASE("two-pair frequencies stay within five sigma") {
    PairTable table;
    table.records.push_back(make_record(0, 1, 1, 4, 4));
    table.records.push_back(make_record(0, 2, 2, 4, 4));
    Rng rng(123);
    BatchSample b = sample_batch(table, 10000, rng);
    int first = 0;
    for (const PairRecord& r : b)
      if (r.gid_j == 1) ++first;
    double sigma = std::sqrt(10000.0 * 0.25);
    CHECK(std::abs(first - 5000.0) <= 5.0 * sigma);
  }

  SUBCASE("empty table is a validation error") {
    PairTable empty;
    Rng rng(0);
    CHECK_THROWS_AS(sample_batch(empty, 1, rng), Error);
  }
}

TEST_CASE("pair labels follow the loss mode") {
  PairRecord r = make_record(0, 1, 4, 4, 4, 0.25);
  CHECK(pair_label(r, LossMode::distance, false) == doctest::Approx(1.0));
  CHECK(pair_label(r, LossMode::distance, true) == 4.0);
  CHECK(pair_label(r, LossMode::similarity, false) == 0.25);
  PairRecord no_sim = make_record(0, 1, 4, 4, 4);
  CHECK_THROWS_WITH_AS(pair_label(no_sim, LossMode::similarity, false),
                       doctest::Contains("sim"), Error);
}

TEST_CASE("distance loss matches hand computation") {
  CHECK(distance_loss({{{1.0, 0.0}, {0.0, 0.0}, 1.0}}) == 0.0);
  CHECK(distance_loss({{{1.0, 2.0}, {1.0, 2.0}, 0.5}}) == 0.25);

  SUBCASE("three-pair batch against the per-term oracle") {
    Rng rng(5);
    std::vector<EmbedPair> batch;
    double expect = 0.0;
    for (int p = 0; p < 3; ++p) {
      EmbedPair ep;
      for (int c = 0; c < 4; ++c) {
        ep.h_i.push_back(rng.uniform_real(-1.0, 1.0));
        ep.h_j.push_back(rng.uniform_real(-1.0, 1.0));
      }
      ep.label = rng.uniform_real(0.0, 2.0);
      double d = 0.0;
      for (int c = 0; c < 4; ++c) {
        double diff = ep.h_i[static_cast<size_t>(c)] - ep.h_j[static_cast<size_t>(c)];
        d += diff * diff;
      }
      expect += (d - ep.label) * (d - ep.label);
      batch.push_back(ep);
    }
    expect /= 3.0;
    CHECK(distance_loss(batch) == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("swapping the pair order leaves the loss unchanged") {
    std::vector<EmbedPair> a{{{1.0, -2.0, 0.5}, {0.25, 3.0, -1.0}, 0.7}};
    std::vector<EmbedPair> b{{a[0].h_j, a[0].h_i, 0.7}};
    CHECK(distance_loss(a) == distance_loss(b));
  }
}

TEST_CASE("similarity loss matches hand computation") {
  CHECK(similarity_loss({{{1.0, 0.0}, {0.0, 1.0}, 0.0}}) == 0.0);
  CHECK(similarity_loss({{{1.0, 0.0}, {1.0, 0.0}, 0.0}}) == 1.0);

  Rng rng(6);
  std::vector<EmbedPair> batch;
  double expect = 0.0;
  for (int p = 0; p < 3; ++p) {
    EmbedPair ep;
    double dotv = 0.0;
    for (int c = 0; c < 3; ++c) {
      ep.h_i.push_back(rng.uniform_real(-1.0, 1.0));
      ep.h_j.push_back(rng.uniform_real(-1.0, 1.0));
      dotv += ep.h_i.back() * ep.h_j.back();
    }
    ep.label = rng.uniform_real(0.0, 1.0);
    expect += (dotv - ep.label) * (dotv - ep.label);
    batch.push_back(ep);
  }
  expect /= 3.0;
  CHECK(similarity_loss(batch) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("tape batch loss agrees with the plain loss") {
  Rng rng(9);
  for (LossMode mode : {LossMode::distance, LossMode::similarity}) {
    std::vector<EmbedPair> batch;
    Tape tape;
    std::vector<std::pair<Var, Var>> vars;
    std::vector<double> labels;
    for (int p = 0; p < 4; ++p) {
      EmbedPair ep;
      for (int c = 0; c < 3; ++c) {
        ep.h_i.push_back(rng.uniform_real(-1.0, 1.0));
        ep.h_j.push_back(rng.uniform_real(-1.0, 1.0));
      }
      ep.label = rng.uniform_real(0.0, 1.0);
      batch.push_back(ep);
      vars.emplace_back(tape.constant(Tensor::row(ep.h_i)), tape.constant(Tensor::row(ep.h_j)));
      labels.push_back(ep.label);
    }
    double plain = mode == LossMode::distance ? distance_loss(batch) : similarity_loss(batch);
    Var loss = batch_loss_var(tape, vars, labels, mode);
    CHECK(tape.value(loss).scalar_value() == doctest::Approx(plain).epsilon(1e-12));
  }
}

TEST_CASE("adam first step matches the bias-corrected rule") {
  Tensor theta = Tensor::scalar(1.0);
  std::vector<ParamRef> refs{{&theta, 0, "theta"}};
  OptimizerState state = init_optimizer(refs);
  GradientMap grads;
  grads.add(0, Tensor::scalar(1.0));
  AdamConfig cfg;
  adam_step(refs, grads, state, cfg);
  double expect = 1.0 - 0.001 / (1.0 + 1e-8);
  CHECK(theta.scalar_value() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(state.t == 1);
  CHECK(state.m[0].scalar_value() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(state.v[0].scalar_value() == doctest::Approx(0.001).epsilon(1e-15));

  SUBCASE("moments decay geometrically under zero gradient") {
    GradientMap zero;
    zero.add(0, Tensor::scalar(0.0));
    adam_step(refs, zero, state, cfg);
    CHECK(state.m[0].scalar_value() == doctest::Approx(0.9 * 0.1).epsilon(1e-15));
    CHECK(state.v[0].scalar_value() == doctest::Approx(0.999 * 0.001).epsilon(1e-15));
  }
}

TEST_CASE("adam with zero gradient from a fresh state is the identity") {
  Tensor theta(2, 2, {1.0, -2.0, 3.0, 4.0});
  Tensor before = theta;
  std::vector<ParamRef> refs{{&theta, 0, "theta"}};
  OptimizerState state = init_optimizer(refs);
  GradientMap zero;
  zero.add(0, Tensor(2, 2));
  adam_step(refs, zero, state, AdamConfig{});
  CHECK(max_abs_diff(theta, before) == 0.0);
  CHECK(state.t == 1);

  SUBCASE("missing gradient entries behave as zero gradients") {
    adam_step(refs, GradientMap{}, state, AdamConfig{});
    CHECK(max_abs_diff(theta, before) == 0.0);
    CHECK(state.t == 2);
  }
}

TEST_CASE("adam rejects non-finite gradients without touching parameters") {
  Tensor theta = Tensor::scalar(2.0);
  std::vector<ParamRef> refs{{&theta, 0, "theta"}};
  OptimizerState state = init_optimizer(refs);
  GradientMap bad;
  bad.add(0, Tensor::scalar(std::numeric_limits<double>::quiet_NaN()));
  try {
    adam_step(refs, bad, state, AdamConfig{});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::numeric);
  }
  CHECK(theta.scalar_value() == 2.0);
  CHECK(state.t == 0);
}

TEST_CASE("adam trajectories are deterministic") {
  auto run = [](std::vector<double>& out) {
    Tensor theta(1, 3, {0.5, -0.5, 1.5});
    std::vector<ParamRef> refs{{&theta, 0, "theta"}};
    OptimizerState state = init_optimizer(refs);
    Rng rng(77);
    for (int s = 0; s < 25; ++s) {
      Tensor g(1, 3);
      for (double& v : g.data) v = rng.uniform_real(-1.0, 1.0);
      GradientMap grads;
      grads.add(0, g);
      adam_step(refs, grads, state, AdamConfig{});
    }
    out = theta.data;
  };
  std::vector<double> a, b;
  run(a);
  run(b);
  CHECK(a == b);
}

TEST_CASE("train with zero iterations returns initial params and empty history") {
  Corpus c = make_corpus(3);
  ModelConfig mc = desk_model(c.vocab.onehot_width());
  TrainConfig tc;
  tc.iterations = 0;
  tc.batch_pairs = 4;
  tc.seed = 11;
  TrainResult r = train(c.splits.train, c.splits.val, c.train_pairs, c.val_pairs, &c.vocab, tc, mc);
  CHECK(r.history.entries.empty());
  CHECK(r.history.best_iter == -1);
  ModelParams expect = init_params(mc, tc.seed);
  CHECK(params_equal(r.params, expect, mc));
}

TEST_CASE("train rejects pairs that reference gids outside the split") {
  Corpus c = make_corpus(4);
  ModelConfig mc = desk_model(c.vocab.onehot_width());
  TrainConfig tc;
  tc.iterations = 5;
  tc.batch_pairs = 2;
  PairTable bad = c.train_pairs;
  PairRecord alien = make_record(9000, 9001, 1, 4, 4);
  bad.records.push_back(alien);
  CHECK_THROWS_WITH_AS(
      train(c.splits.train, c.splits.val, bad, c.val_pairs, &c.vocab, tc, mc),
      doctest::Contains("training split"), Error);
}

TEST_CASE("training is deterministic and reduces the full-table loss") {
  Corpus c = make_corpus(5);
  ModelConfig mc = desk_model(c.vocab.onehot_width());
  TrainConfig tc;
  tc.iterations = 300;
  tc.batch_pairs = 8;
  tc.lr = 0.01;
  tc.checkpoint_every = 50;
  tc.seed = 1;

  ModelParams initial = init_params(mc, tc.seed);
  double loss_before = batch_loss(c.train_pairs.records, c.splits.train, &c.vocab, initial, mc,
                                  LossMode::distance);

  TrainResult r1 = train(c.splits.train, c.splits.val, c.train_pairs, c.val_pairs, &c.vocab, tc, mc);
  TrainResult r2 = train(c.splits.train, c.splits.val, c.train_pairs, c.val_pairs, &c.vocab, tc, mc);

  SUBCASE("bit-identical across runs") {
    CHECK(params_equal(r1.params, r2.params, mc));
    REQUIRE(r1.history.entries.size() == r2.history.entries.size());
    for (size_t i = 0; i < r1.history.entries.size(); ++i) {
      CHECK(r1.history.entries[i].train_loss == r2.history.entries[i].train_loss);
      CHECK(r1.history.entries[i].val_loss.has_value() ==
            r2.history.entries[i].val_loss.has_value());
      if (r1.history.entries[i].val_loss)
        CHECK(*r1.history.entries[i].val_loss == *r2.history.entries[i].val_loss);
    }
    CHECK(r1.history.best_iter == r2.history.best_iter);
  }

  SUBCASE("history structure") {
    REQUIRE(r1.history.entries.size() == 300);
    for (size_t i = 0; i < r1.history.entries.size(); ++i) {
      long long iter = r1.history.entries[i].iter;
      CHECK(iter == static_cast<long long>(i) + 1);
      bool expect_val = iter % 50 == 0 || iter == 300;
      CHECK(r1.history.entries[i].val_loss.has_value() == expect_val);
    }
    double best = std::numeric_limits<double>::infinity();
    long long best_iter = -1;
    for (const TrainHistoryEntry& e : r1.history.entries)
      if (e.val_loss && *e.val_loss < best) {
        best = *e.val_loss;
        best_iter = e.iter;
      }
    CHECK(r1.history.best_iter == best_iter);
  }

  SUBCASE("full-table training loss at least halves") {
    double loss_after = batch_loss(c.train_pairs.records, c.splits.train, &c.vocab, r1.params, mc,
                                   LossMode::distance);
    CHECK(loss_after <= 0.5 * loss_before);
  }
}

TEST_CASE("similarity mode requires sim labels upfront") {
  Corpus c = make_corpus(6);
  ModelConfig mc = desk_model(c.vocab.onehot_width());
  TrainConfig tc;
  tc.iterations = 3;
  tc.batch_pairs = 2;
  tc.loss_mode = LossMode::similarity;
  CHECK_THROWS_WITH_AS(
      train(c.splits.train, c.splits.val, c.train_pairs, c.val_pairs, &c.vocab, tc, mc),
      doctest::Contains("sim"), Error);

  PairTable with_sim = c.train_pairs;
  for (PairRecord& r : with_sim.records) r.sim = std::exp(-r.nged);
  PairTable val_sim = c.val_pairs;
  for (PairRecord& r : val_sim.records) r.sim = std::exp(-r.nged);
  TrainResult r = train(c.splits.train, c.splits.val, with_sim, val_sim, &c.vocab, tc, mc);
  CHECK(r.history.entries.size() == 3);
}

TEST_CASE("class list and fine-tune validation") {
  std::vector<LabeledGraph> graphs;
  graphs.emplace_back(0, std::vector<std::string>{"A"}, std::vector<std::pair<int, int>>{},
                      std::optional<std::string>{"x"});
  graphs.emplace_back(1, std::vector<std::string>{"A"}, std::vector<std::pair<int, int>>{},
                      std::optional<std::string>{"y"});
  Dataset ds{graphs, std::nullopt};
  CHECK(class_list(ds) == std::vector<std::string>{"x", "y"});

  Dataset missing{{LabeledGraph(2, {"A"}, {})}, std::nullopt};
  CHECK_THROWS_WITH_AS(class_list(missing), doctest::Contains("glabel"), Error);
}

TEST_CASE("fine-tune on one class keeps the loss at zero") {
  std::vector<LabeledGraph> graphs;
  for (int i = 0; i < 4; ++i)
    graphs.emplace_back(i, std::vector<std::string>{"A", "A"},
                        std::vector<std::pair<int, int>>{{0, 1}},
                        std::optional<std::string>{"only"});
  Dataset ds{graphs, std::nullopt};
  LabelVocab vocab{{"A"}};
  ModelConfig mc = desk_model(vocab.onehot_width());
  TrainConfig tc;
  tc.batch_pairs = 3;
  tc.seed = 2;
  ModelParams start = init_params(mc, 2);
  TrainHistory hist;
  ModelParams tuned = fine_tune(start, ds, &vocab, tc, mc, 5, &hist, 0);
  REQUIRE(hist.entries.size() == 5);
  for (const TrainHistoryEntry& e : hist.entries) CHECK(e.train_loss == 0.0);
  CHECK(tuned.has_class_head());
  CHECK(tuned.class_w.back().cols == 1);
}

TEST_CASE("fine-tune reduces classification loss on a two-class corpus") {
  std::vector<FamilySpec> specs(2);
  specs[0].family = GraphFamily::star;
  specs[0].count = 6;
  specs[0].min_size = 4;
  specs[0].max_size = 6;
  specs[0].alphabet = {"A", "B"};
  specs[1] = specs[0];
  specs[1].family = GraphFamily::complete;
  Dataset ds = synth_generate(specs, 8);
  LabelVocab vocab = build_label_vocab(ds);
  ModelConfig mc = desk_model(vocab.onehot_width());
  TrainConfig tc;
  tc.batch_pairs = 6;
  tc.lr = 0.01;
  tc.seed = 3;
  ModelParams start = init_params(mc, 3);
  TrainHistory hist;
  ModelParams tuned = fine_tune(start, ds, &vocab, tc, mc, 80, &hist, 10);
  REQUIRE(hist.entries.size() == 80);
  CHECK(hist.entries.front().iter == 11);
  CHECK(hist.entries.back().iter == 90);
  CHECK(hist.entries.back().train_loss < hist.entries.front().train_loss);
  CHECK(tuned.class_w.back().cols == 2);
  CHECK(tuned.class_w.front().rows == mc.embed_dim);
}

TEST_CASE("fine-tune cross-entropy gradients pass finite differences") {
  std::vector<LabeledGraph> graphs;
  graphs.emplace_back(0, std::vector<std::string>{"A", "B", "A"},
                      std::vector<std::pair<int, int>>{{0, 1}, {1, 2}},
                      std::optional<std::string>{"x"});
  graphs.emplace_back(1, std::vector<std::string>{"B", "B"},
                      std::vector<std::pair<int, int>>{{0, 1}},
                      std::optional<std::string>{"y"});
  Dataset ds{graphs, std::nullopt};
  LabelVocab vocab{{"A", "B"}};
  ModelConfig mc = desk_model(vocab.onehot_width());
  TrainConfig tc;
  tc.seed = 4;
  ModelParams with_head = fine_tune(init_params(mc, 4), ds, &vocab, tc, mc, 0);
  REQUIRE(with_head.has_class_head());

  std::vector<Tensor> init;
  std::vector<std::string> names;
  {
    auto refs = param_refs(with_head, mc);
    for (auto& r : refs) {
      init.push_back(*r.tensor);
      names.push_back(r.name);
    }
  }
  auto run = [&](const std::vector<Tensor>& ps, GradientMap* out) {
    ModelParams p = with_head;
    auto refs = param_refs(p, mc);
    REQUIRE(refs.size() == ps.size());
    for (size_t i = 0; i < refs.size(); ++i) *refs[i].tensor = ps[i];
    Tape tape;
    TapeParams tp = register_params(tape, p, mc);
    Var total;
    for (size_t i = 0; i < ds.graphs.size(); ++i) {
      const LabeledGraph& g = ds.graphs[i];
      Var h = graph_embed_var(tape, g, encode_features(g, &vocab), tp, mc);
      Var xent = softmax_xent(class_logits_var(tape, h, tp), static_cast<int>(i));
      total = i == 0 ? xent : add(total, xent);
    }
    Var loss = scale(total, 0.5);
    double v = tape.value(loss).scalar_value();
    if (out) *out = tape.backward(loss);
    return v;
  };
  auto value = [&](const std::vector<Tensor>& ps) { return run(ps, nullptr); };
  auto grads = [&](const std::vector<Tensor>& ps) {
    GradientMap gm;
    run(ps, &gm);
    std::vector<Tensor> out;
    for (size_t i = 0; i < ps.size(); ++i) {
      const Tensor* t = gm.find(static_cast<int>(i));
      out.push_back(t ? *t : Tensor(ps[i].rows, ps[i].cols));
    }
    return out;
  };
  GradCheckReport rep = finite_diff_check(value, grads, init, 1e-5, 1e-4, names);
  CHECK(rep.passed);
}

TEST_CASE("train with a fine-tune phase extends the history and attaches the head") {
  Corpus c = make_corpus(7);
  ModelConfig mc = desk_model(c.vocab.onehot_width());
  TrainConfig tc;
  tc.iterations = 40;
  tc.batch_pairs = 4;
  tc.checkpoint_every = 10;
  tc.seed = 5;
  tc.fine_tune = FineTunePhase{25, {5}, 0.001};
  TrainResult r = train(c.splits.train, c.splits.val, c.train_pairs, c.val_pairs, &c.vocab, tc, mc);
  REQUIRE(r.history.entries.size() == 40);
  CHECK(r.history.entries[24].iter == 25);
  CHECK(r.history.entries[39].iter == 40);
  CHECK(r.params.has_class_head());
  CHECK(r.params.class_w.front().cols == 5);
  long long max_val_iter = -1;
  for (const TrainHistoryEntry& e : r.history.entries)
    if (e.val_loss) max_val_iter = e.iter;
  CHECK(max_val_iter == 25);
}

TEST_CASE("train history CSV format") {
  TrainHistory h;
  h.entries.push_back({1, 0.5, std::nullopt});
  h.entries.push_back({2, 0.25, 0.125});
  std::string path = "train_history_test.csv";
  save_train_history(h, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,train_loss,val_loss");
  std::getline(in, line);
  CHECK(line == "1,0.500000000,");
  std::getline(in, line);
  CHECK(line == "2,0.250000000,0.125000000");
  CHECK_FALSE(std::getline(in, line));
  std::remove(path.c_str());
}
