#include "gedembed/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gedembed/errors.hpp"
#include "gedembed/ged/astar.hpp"
#include "gedembed/ged/bipartite.hpp"
#include "gedembed/ged/hed.hpp"
#include "gedembed/ged/lsap.hpp"
#include "gedembed/rng.hpp"
#include "gedembed/tensor/grad_check.hpp"
#include "gedembed/tensor/tape.hpp"

namespace gedembed {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

LabeledGraph random_check_graph(int gid, int max_nodes, double edge_p, Rng& rng) {
  static const std::vector<std::string> alphabet = {"A", "B"};
  int n = 1 + static_cast<int>(rng.bounded(static_cast<uint64_t>(max_nodes)));
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    labels.push_back(alphabet[static_cast<size_t>(rng.bounded(alphabet.size()))]);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(edge_p)) edges.emplace_back(u, v);
  return LabeledGraph(gid, std::move(labels), std::move(edges));
}

ModelConfig tiny_check_config(int input_dim, PoolingMode pooling) {
  ModelConfig cfg;
  cfg.gin_dims = {4, 3};
  cfg.head_hidden = {4};
  cfg.embed_dim = 3;
  cfg.input_dim = input_dim;
  cfg.pooling = pooling;
  return cfg;
}

CheckResult check_bound_sandwich(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "check-bounds"));
  int violations = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    LabeledGraph g1 = random_check_graph(0, 6, 0.4, rng);
    LabeledGraph g2 = random_check_graph(1, 6, 0.4, rng);
    int exact = ged_exact_astar(g1, g2).value;
    int lower = hed_lower(g1, g2).value;
    int beam5 = ged_beam(g1, g2, 5).value;
    int bip = ged_bipartite(g1, g2).value;
    if (!(lower <= exact && exact <= beam5 && exact <= bip)) ++violations;
  }
  return {"bound-sandwich",
          violations == 0,
          std::to_string(trials) + " random pairs, " + std::to_string(violations) + " violations"};
}

// Finite-difference check of the distance loss end to end on one graph pair.
GradCheckReport run_distance_loss_fd(std::uint64_t seed, std::uint64_t attempt) {
  Rng rng(derive_seed(seed, "check-grad", attempt));
  LabeledGraph g1 = random_check_graph(0, 5, 0.5, rng);
  LabeledGraph g2 = random_check_graph(1, 5, 0.5, rng);
  Dataset ds;
  ds.graphs = {g1, g2};
  LabelVocab vocab = build_label_vocab(ds);
  ModelConfig cfg = tiny_check_config(vocab.onehot_width(), PoolingMode::msna);
  ModelParams params = init_params(cfg, seed + attempt);

  std::vector<Tensor> values;
  std::vector<std::string> names;
  for (const ParamRef& ref : param_refs(params, cfg)) {
    values.push_back(*ref.tensor);
    names.push_back(ref.name);
  }
  const double label = 0.7;

  auto rebuild = [&](const std::vector<Tensor>& ts) {
    ModelParams p = params;
    std::vector<ParamRef> refs = param_refs(p, cfg);
    for (size_t i = 0; i < refs.size(); ++i) *refs[i].tensor = ts[i];
    return p;
  };
  auto forward = [&](Tape& tape, ModelParams& p) {
    TapeParams tp = register_params(tape, p, cfg);
    Var hi = graph_embed_var(tape, g1, encode_features(g1, &vocab), tp, cfg);
    Var hj = graph_embed_var(tape, g2, encode_features(g2, &vocab), tp, cfg);
    Var diff = squared_l2_rowdiff(hi, hj);
    return square(sub(diff, tape.constant(Tensor::scalar(label))));
  };
  auto loss_value = [&](const std::vector<Tensor>& ts) {
    ModelParams p = rebuild(ts);
    Tape tape;
    return tape.value(forward(tape, p)).at(0, 0);
  };
  auto loss_grads = [&](const std::vector<Tensor>& ts) {
    ModelParams p = rebuild(ts);
    Tape tape;
    Var loss = forward(tape, p);
    GradientMap gm = tape.backward(loss);
    std::vector<ParamRef> refs = param_refs(p, cfg);
    std::vector<Tensor> grads;
    for (const ParamRef& ref : refs) {
      const Tensor* g = gm.find(ref.id);
      grads.push_back(g ? *g : Tensor(ref.tensor->rows, ref.tensor->cols));
    }
    return grads;
  };

  return finite_diff_check(loss_value, loss_grads, values, 1e-5, 1e-4, names);
}

// A draw whose ReLU pre-activations land within the step of a kink gives a
// spurious mismatch, so one failed draw is inconclusive; a wrong gradient
// fails every draw.
CheckResult check_gradient(std::uint64_t seed) {
  const int attempts = 5;
  GradCheckReport last;
  for (int a = 0; a < attempts; ++a) {
    last = run_distance_loss_fd(seed, static_cast<std::uint64_t>(a));
    if (last.passed)
      return {"gradient-check", true,
              "max rel err " + fmt(last.max_rel_err) + " on draw " + std::to_string(a + 1)};
  }
  return {"gradient-check", false,
          "max rel err " + fmt(last.max_rel_err) + " on all " + std::to_string(attempts) +
              " draws"};
}

// A deliberately wrong analytic gradient (sign-flipped sigmoid derivative)
// must be rejected by the same checker.
CheckResult check_gradient_negative_control() {
  Tensor x(1, 3);
  x.at(0, 0) = 0.3;
  x.at(0, 1) = -0.8;
  x.at(0, 2) = 1.1;
  auto value = [](const std::vector<Tensor>& ts) {
    double s = 0.0;
    for (double v : ts[0].data) s += 1.0 / (1.0 + std::exp(-v));
    return s;
  };
  auto wrong_grads = [](const std::vector<Tensor>& ts) {
    Tensor g(ts[0].rows, ts[0].cols);
    for (size_t i = 0; i < g.data.size(); ++i) {
      double sig = 1.0 / (1.0 + std::exp(-ts[0].data[i]));
      g.data[i] = -sig * (1.0 - sig);
    }
    return std::vector<Tensor>{g};
  };
  GradCheckReport report = finite_diff_check(value, wrong_grads, {x}, 1e-5, 1e-4, {"x"});
  return {"gradient-negative-control", !report.passed,
          report.passed ? "sign-flipped derivative slipped through"
                        : "sign-flipped derivative rejected"};
}

CheckResult check_permutation_invariance(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "check-perm"));
  double worst = 0.0;
  for (PoolingMode mode :
       {PoolingMode::msna, PoolingMode::na_last, PoolingMode::avg, PoolingMode::supersource}) {
    for (int t = 0; t < 10; ++t) {
      LabeledGraph g = random_check_graph(t, 7, 0.4, rng);
      Dataset ds;
      ds.graphs = {g};
      LabelVocab vocab = build_label_vocab(ds);
      ModelConfig cfg = tiny_check_config(vocab.onehot_width(), mode);
      ModelParams params = init_params(cfg, seed + static_cast<std::uint64_t>(t));

      std::vector<int> perm(static_cast<size_t>(g.num_nodes()));
      for (int i = 0; i < g.num_nodes(); ++i) perm[static_cast<size_t>(i)] = i;
      for (int rep = 0; rep < 3; ++rep) {
        rng.shuffle(perm);
        LabeledGraph pg = permute_nodes(g, perm);
        GraphEmbedding a = graph_embed(g, encode_features(g, &vocab), params, cfg);
        GraphEmbedding b = graph_embed(pg, encode_features(pg, &vocab), params, cfg);
        for (size_t i = 0; i < a.h.size(); ++i)
          worst = std::max(worst, std::abs(a.h[i] - b.h[i]));
      }
    }
  }
  return {"permutation-invariance", worst <= 1e-9, "max |h(G) - h(perm(G))| = " + fmt(worst)};
}

// Corrupting the assignment costs changes which mapping is chosen, never the
// validity of its induced cost as an upper bound.
CheckResult check_mutated_cost_matrix(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "check-mutation"));
  int violations = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    LabeledGraph g1 = random_check_graph(0, 6, 0.4, rng);
    LabeledGraph g2 = random_check_graph(1, 6, 0.4, rng);
    std::vector<std::vector<double>> cost = bipartite_cost_matrix(g1, g2);
    size_t r = static_cast<size_t>(rng.bounded(cost.size()));
    size_t c = static_cast<size_t>(rng.bounded(cost.size()));
    cost[r][c] += 2.0;
    LsapResult asg = solve_lsap(cost);
    NodeMapping m;
    for (int i = 0; i < g1.num_nodes(); ++i) {
      int col = asg.assignment[static_cast<size_t>(i)];
      m.to_g2.push_back(col < g2.num_nodes() ? col : NodeMapping::kDeleted);
    }
    int ub = induced_edit_cost(g1, g2, m);
    int exact = ged_exact_astar(g1, g2).value;
    if (ub < exact) ++violations;
  }
  return {"bipartite-mutation-upper-bound",
          violations == 0,
          std::to_string(trials) + " corrupted matrices, " + std::to_string(violations) +
              " bound violations"};
}

}  // namespace

SplitName parse_split_name(const std::string& token) {
  if (token == "train") return SplitName::train;
  if (token == "val") return SplitName::val;
  if (token == "test") return SplitName::test;
  if (token == "all") return SplitName::all;
  throw_config("unknown split '" + token + "' (expected train, val, test, or all)");
}

Dataset select_split(const Dataset& ds, SplitName name, std::uint64_t split_seed) {
  if (name == SplitName::all) return ds;
  SplitSpec spec;
  spec.seed = split_seed;
  DatasetSplits splits = split_dataset(ds, spec);
  switch (name) {
    case SplitName::train: return splits.train;
    case SplitName::val: return splits.val;
    case SplitName::test: return splits.test;
    default: return ds;
  }
}

std::vector<GraphEmbedding> embed_dataset(const Dataset& split, const LabelVocab* vocab,
                                          ModelParams& params, const ModelConfig& cfg) {
  std::vector<GraphEmbedding> out;
  out.reserve(split.graphs.size());
  for (const LabeledGraph& g : split.graphs)
    out.push_back(graph_embed(g, encode_features(g, vocab), params, cfg));
  return out;
}

RankEval evaluate_rankings(const std::vector<GraphEmbedding>& queries,
                           const std::vector<GraphEmbedding>& corpus, const PairTable& table,
                           LossMode mode, int k) {
  if (queries.empty()) throw_validation("evaluate_rankings: no queries");
  if (corpus.empty()) throw_validation("evaluate_rankings: empty corpus");
  if (k <= 0) throw_validation("evaluate_rankings: k must be positive");

  int min_corpus = std::numeric_limits<int>::max();
  std::vector<std::vector<GraphEmbedding>> per_query_corpus;
  for (const GraphEmbedding& q : queries) {
    std::vector<GraphEmbedding> others;
    for (const GraphEmbedding& c : corpus)
      if (c.gid != q.gid) others.push_back(c);
    if (others.empty())
      throw_validation("evaluate_rankings: corpus holds nothing but the query gid " +
                       std::to_string(q.gid));
    min_corpus = std::min(min_corpus, static_cast<int>(others.size()));
    per_query_corpus.push_back(std::move(others));
  }
  int k_used = std::min(k, min_corpus);

  RankEval out;
  out.report.k_used = k_used;
  double tau_sum = 0.0;
  int tau_count = 0;
  double p_sum = 0.0;
  double sq_err = 0.0;
  long long pair_count = 0;

  for (size_t qi = 0; qi < queries.size(); ++qi) {
    const GraphEmbedding& q = queries[qi];
    const std::vector<GraphEmbedding>& others = per_query_corpus[qi];
    out.rankings.push_back(rank_query(q, others, mode));

    std::vector<double> truth, pred;
    for (const GraphEmbedding& c : others) {
      const PairRecord* rec = table.find(q.gid, c.gid);
      if (!rec)
        throw_validation("no ground-truth record for pair (" + std::to_string(q.gid) + ", " +
                         std::to_string(c.gid) + ")");
      double t;
      if (mode == LossMode::distance) {
        t = rec->nged;
      } else {
        if (!rec->sim)
          throw_validation("pair (" + std::to_string(rec->gid_i) + ", " +
                           std::to_string(rec->gid_j) + ") has no sim label");
        t = *rec->sim;
      }
      double p = mode == LossMode::distance ? predict_distance(q, c) : predict_similarity(q, c);
      truth.push_back(t);
      pred.push_back(p);
      sq_err += (p - t) * (p - t);
      ++pair_count;
    }

    std::optional<double> tau = kendall_tau_b(truth, pred);
    if (tau) {
      tau_sum += *tau;
      ++tau_count;
    }
    if (mode == LossMode::similarity) {
      for (double& v : truth) v = -v;
      for (double& v : pred) v = -v;
    }
    p_sum += precision_at_k(truth, pred, k_used);
  }

  if (tau_count > 0) out.report.tau = tau_sum / tau_count;
  out.report.p_at_k = p_sum / static_cast<double>(queries.size());
  out.report.mse = sq_err / static_cast<double>(pair_count);
  return out;
}

bool CheckReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

CheckReport self_check(std::uint64_t seed) {
  CheckReport report;
  report.checks.push_back(check_bound_sandwich(seed));
  report.checks.push_back(check_gradient(seed));
  report.checks.push_back(check_gradient_negative_control());
  report.checks.push_back(check_permutation_invariance(seed));
  report.checks.push_back(check_mutated_cost_matrix(seed));
  return report;
}

}  // namespace gedembed
