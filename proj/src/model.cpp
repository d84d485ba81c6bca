#include "gedembed/model/model.hpp"

#include <cmath>
#include <utility>

#include "gedembed/errors.hpp"
#include "gedembed/rng.hpp"

namespace gedembed {

const char* to_string(PoolingMode p) {
  switch (p) {
    case PoolingMode::msna: return "msna";
    case PoolingMode::na_last: return "na_last";
    case PoolingMode::avg: return "avg";
    case PoolingMode::supersource: return "supersource";
  }
  return "unknown";
}

const char* to_string(EpsilonMode e) {
  return e == EpsilonMode::fixed ? "fixed" : "learned";
}

PoolingMode parse_pooling(const std::string& name) {
  if (name == "msna") return PoolingMode::msna;
  if (name == "na_last") return PoolingMode::na_last;
  if (name == "avg") return PoolingMode::avg;
  if (name == "supersource") return PoolingMode::supersource;
  throw_config("unknown pooling mode '" + name + "' (expected msna, na_last, avg, supersource)");
}

EpsilonMode parse_epsilon_mode(const std::string& name) {
  if (name == "fixed") return EpsilonMode::fixed;
  if (name == "learned") return EpsilonMode::learned;
  throw_config("unknown epsilon mode '" + name + "' (expected fixed, learned)");
}

int ModelConfig::head_input_dim() const {
  if (pooling == PoolingMode::msna) {
    int total = 0;
    for (int d : gin_dims) total += d;
    return total;
  }
  return gin_dims.back();
}

void ModelConfig::validate() const {
  if (gin_dims.empty()) throw_config("ModelConfig: gin_dims must not be empty");
  for (int d : gin_dims)
    if (d < 1) throw_config("ModelConfig: gin_dims entries must be >= 1");
  for (int d : head_hidden)
    if (d < 1) throw_config("ModelConfig: head_hidden entries must be >= 1");
  if (embed_dim < 1) throw_config("ModelConfig: embed_dim must be >= 1");
  if (input_dim < 1) throw_config("ModelConfig: input_dim must be >= 1");
  if (!std::isfinite(epsilon_value)) throw_config("ModelConfig: epsilon_value must be finite");
}

Tensor glorot_uniform(int fan_in, int fan_out, Rng& rng) {
  double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Tensor t(fan_in, fan_out);
  for (double& v : t.data) v = rng.uniform_real(-limit, limit);
  return t;
}

namespace {

std::vector<int> head_widths(const ModelConfig& cfg) {
  std::vector<int> w;
  w.push_back(cfg.head_input_dim());
  for (int h : cfg.head_hidden) w.push_back(h);
  w.push_back(cfg.embed_dim);
  return w;
}

// Every trainable tensor in a fixed enumeration order; ids are assigned by
// position, so param_refs and register_params always agree.
template <typename F>
void visit_params(ModelParams& p, const ModelConfig& cfg, F&& f) {
  for (size_t k = 0; k < p.gin.size(); ++k) {
    f(p.gin[k].w1, "gin_w1", static_cast<int>(k));
    f(p.gin[k].b1, "gin_b1", static_cast<int>(k));
    f(p.gin[k].w2, "gin_w2", static_cast<int>(k));
    f(p.gin[k].b2, "gin_b2", static_cast<int>(k));
    if (cfg.epsilon_mode == EpsilonMode::learned)
      f(p.gin[k].eps, "gin_eps", static_cast<int>(k));
  }
  for (size_t k = 0; k < p.theta.size(); ++k) f(p.theta[k], "theta", static_cast<int>(k));
  for (size_t i = 0; i < p.head_w.size(); ++i) {
    f(p.head_w[i], "head_w", static_cast<int>(i));
    f(p.head_b[i], "head_b", static_cast<int>(i));
  }
  for (size_t i = 0; i < p.class_w.size(); ++i) {
    f(p.class_w[i], "class_w", static_cast<int>(i));
    f(p.class_b[i], "class_b", static_cast<int>(i));
  }
}

LabeledGraph augment_supersource(const LabeledGraph& g) {
  std::vector<std::string> labels = g.labels();
  labels.emplace_back();
  std::vector<std::pair<int, int>> edges = g.edges();
  int s = g.num_nodes();
  for (int i = 0; i < s; ++i) edges.emplace_back(i, s);
  return LabeledGraph(g.gid(), std::move(labels), std::move(edges), g.glabel());
}

// Adds the reserved indicator column: original rows get 0 there, the appended
// supersource row is all zeros except that column.
Tensor supersource_features(const Tensor& base) {
  Tensor out(base.rows + 1, base.cols + 1);
  for (int r = 0; r < base.rows; ++r)
    for (int c = 0; c < base.cols; ++c) out.at(r, c) = base.at(r, c);
  out.at(base.rows, base.cols) = 1.0;
  return out;
}

Var head_forward(Var h, const std::vector<Var>& w, const std::vector<Var>& b) {
  for (size_t i = 0; i < w.size(); ++i) {
    h = add(matmul(h, w[i]), b[i]);
    if (i + 1 < w.size()) h = relu(h);
  }
  return h;
}

}  // namespace

ModelParams init_params(const ModelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng = Rng::derived(seed, "init");
  ModelParams p;
  int in = cfg.effective_input_dim();
  for (int k = 0; k < cfg.num_layers(); ++k) {
    int out = cfg.gin_dims[static_cast<size_t>(k)];
    GinLayerParams layer;
    layer.w1 = glorot_uniform(in, out, rng);
    layer.b1 = Tensor(1, out);
    layer.w2 = glorot_uniform(out, out, rng);
    layer.b2 = Tensor(1, out);
    layer.eps = Tensor::scalar(cfg.epsilon_value);
    p.gin.push_back(std::move(layer));
    in = out;
  }
  for (int k = 0; k < cfg.num_layers(); ++k) {
    int d = cfg.gin_dims[static_cast<size_t>(k)];
    p.theta.push_back(glorot_uniform(d, d, rng));
  }
  std::vector<int> hw = head_widths(cfg);
  for (size_t i = 0; i + 1 < hw.size(); ++i) {
    p.head_w.push_back(glorot_uniform(hw[i], hw[i + 1], rng));
    p.head_b.emplace_back(1, hw[i + 1]);
  }
  return p;
}

std::vector<ParamRef> param_refs(ModelParams& params, const ModelConfig& cfg) {
  std::vector<ParamRef> refs;
  visit_params(params, cfg, [&](Tensor& t, const char* group, int idx) {
    refs.push_back({&t, static_cast<int>(refs.size()), std::string(group) + std::to_string(idx)});
  });
  return refs;
}

TapeParams register_params(Tape& tape, ModelParams& params, const ModelConfig& cfg) {
  TapeParams tp;
  int next_id = 0;
  visit_params(params, cfg, [&](Tensor& t, const char* group, int) {
    Var v = tape.param(t, next_id++);
    std::string g(group);
    if (g == "gin_w1") tp.gin_w1.push_back(v);
    else if (g == "gin_b1") tp.gin_b1.push_back(v);
    else if (g == "gin_w2") tp.gin_w2.push_back(v);
    else if (g == "gin_b2") tp.gin_b2.push_back(v);
    else if (g == "gin_eps") tp.gin_eps.push_back(v);
    else if (g == "theta") tp.theta.push_back(v);
    else if (g == "head_w") tp.head_w.push_back(v);
    else if (g == "head_b") tp.head_b.push_back(v);
    else if (g == "class_w") tp.class_w.push_back(v);
    else if (g == "class_b") tp.class_b.push_back(v);
  });
  return tp;
}

Var gin_layer_var(Tape& tape, Var u_prev, Var adjacency, Var w1, Var b1, Var w2, Var b2,
                  std::optional<Var> eps_learned, double eps_fixed) {
  Var neigh = matmul(adjacency, u_prev);
  Var self_term =
      eps_learned ? add(u_prev, scalar_mul(*eps_learned, u_prev)) : scale(u_prev, 1.0 + eps_fixed);
  Var combined = add(self_term, neigh);
  int n = tape.value(combined).rows;
  Var h = relu(add(matmul(combined, w1), tile_rows(b1, n)));
  return add(matmul(h, w2), tile_rows(b2, n));
}

Tensor gin_layer_value(const LabeledGraph& g, const Tensor& u_prev, const GinLayerParams& layer,
                       const ModelConfig& cfg) {
  if (u_prev.rows != g.num_nodes())
    throw_validation("gin_layer: feature rows do not match node count");
  Tape tape;
  Var a = tape.constant(g.adjacency_matrix());
  Var u = tape.constant(u_prev);
  std::optional<Var> eps;
  if (cfg.epsilon_mode == EpsilonMode::learned) eps = tape.constant(layer.eps);
  Var out = gin_layer_var(tape, u, a, tape.constant(layer.w1), tape.constant(layer.b1),
                          tape.constant(layer.w2), tape.constant(layer.b2), eps,
                          layer.eps.scalar_value());
  return tape.value(out);
}

Var attention_pool_var(Tape& tape, Var u, Var theta) {
  Var ctx = relu(matmul(col_mean(u), transpose(theta)));
  Var gates = sigmoid(matmul(u, transpose(ctx)));
  (void)tape;
  return matmul(transpose(gates), u);
}

Tensor attention_pool_value(const Tensor& u, const Tensor& theta) {
  Tape tape;
  Var out = attention_pool_var(tape, tape.constant(u), tape.constant(theta));
  return tape.value(out);
}

Var graph_embed_var(Tape& tape, const LabeledGraph& g, const Tensor& features,
                    const TapeParams& tp, const ModelConfig& cfg) {
  if (g.num_nodes() == 0) throw_validation("graph_embed: graph has no nodes");
  if (features.rows != g.num_nodes() || features.cols != cfg.input_dim)
    throw_validation("graph_embed: feature matrix is " + features.shape_str() + ", expected (" +
                     std::to_string(g.num_nodes()) + "x" + std::to_string(cfg.input_dim) + ")");
  const bool ss = cfg.pooling == PoolingMode::supersource;
  Var a = tape.constant(ss ? augment_supersource(g).adjacency_matrix() : g.adjacency_matrix());
  Var u = tape.constant(ss ? supersource_features(features) : features);
  std::vector<Var> layer_out;
  for (int k = 0; k < cfg.num_layers(); ++k) {
    size_t ki = static_cast<size_t>(k);
    std::optional<Var> eps;
    if (cfg.epsilon_mode == EpsilonMode::learned) eps = tp.gin_eps[ki];
    u = gin_layer_var(tape, u, a, tp.gin_w1[ki], tp.gin_b1[ki], tp.gin_w2[ki], tp.gin_b2[ki], eps,
                      cfg.epsilon_value);
    layer_out.push_back(u);
  }
  Var pooled;
  switch (cfg.pooling) {
    case PoolingMode::msna: {
      std::vector<Var> parts;
      for (int k = 0; k < cfg.num_layers(); ++k)
        parts.push_back(attention_pool_var(tape, layer_out[static_cast<size_t>(k)],
                                           tp.theta[static_cast<size_t>(k)]));
      pooled = parts.size() == 1 ? parts[0] : concat_cols(parts);
      break;
    }
    case PoolingMode::na_last:
      pooled = attention_pool_var(tape, layer_out.back(), tp.theta.back());
      break;
    case PoolingMode::avg:
      pooled = col_mean(layer_out.back());
      break;
    case PoolingMode::supersource:
      pooled = take_row(layer_out.back(), g.num_nodes());
      break;
  }
  return head_forward(pooled, tp.head_w, tp.head_b);
}

GraphEmbedding graph_embed(const LabeledGraph& g, const Tensor& features, ModelParams& params,
                           const ModelConfig& cfg) {
  Tape tape;
  TapeParams tp = register_params(tape, params, cfg);
  Var h = graph_embed_var(tape, g, features, tp, cfg);
  const Tensor& v = tape.value(h);
  return GraphEmbedding{g.gid(), v.data};
}

Var class_logits_var(Tape& tape, Var h, const TapeParams& tp) {
  if (tp.class_w.empty()) throw_validation("class_logits: model has no class head");
  (void)tape;
  return head_forward(h, tp.class_w, tp.class_b);
}

double predict_distance(const GraphEmbedding& a, const GraphEmbedding& b) {
  if (a.dim() != b.dim()) throw_validation("predict_distance: embedding dims differ");
  double s = 0.0;
  for (size_t i = 0; i < a.h.size(); ++i) {
    double d = a.h[i] - b.h[i];
    s += d * d;
  }
  return s;
}

double predict_similarity(const GraphEmbedding& a, const GraphEmbedding& b) {
  if (a.dim() != b.dim()) throw_validation("predict_similarity: embedding dims differ");
  double s = 0.0;
  for (size_t i = 0; i < a.h.size(); ++i) s += a.h[i] * b.h[i];
  return s;
}

}  // namespace gedembed
