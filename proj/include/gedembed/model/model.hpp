#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gedembed/graph.hpp"
#include "gedembed/tensor/tape.hpp"
#include "gedembed/tensor/tensor.hpp"

namespace gedembed {

enum class PoolingMode { msna, na_last, avg, supersource };
enum class EpsilonMode { fixed, learned };

const char* to_string(PoolingMode p);
const char* to_string(EpsilonMode e);
PoolingMode parse_pooling(const std::string& name);
EpsilonMode parse_epsilon_mode(const std::string& name);

struct ModelConfig {
  std::vector<int> gin_dims = {256, 128, 64};
  EpsilonMode epsilon_mode = EpsilonMode::fixed;
  double epsilon_value = 0.0;
  PoolingMode pooling = PoolingMode::msna;
  std::vector<int> head_hidden = {256};
  int embed_dim = 256;
  int input_dim = 0;  // feature width before any supersource column

  int num_layers() const { return static_cast<int>(gin_dims.size()); }
  // Width of the vector entering the head MLP.
  int head_input_dim() const;
  // Layer-1 input width; one extra reserved column under supersource pooling.
  int effective_input_dim() const {
    return pooling == PoolingMode::supersource ? input_dim + 1 : input_dim;
  }
  void validate() const;
};

// One GIN layer: 2-layer MLP (linear, relu, linear) with hidden width equal
// to the output width, plus the self-loop weight epsilon.
struct GinLayerParams {
  Tensor w1, b1, w2, b2;
  Tensor eps;  // 1x1
};

struct ModelParams {
  std::vector<GinLayerParams> gin;
  std::vector<Tensor> theta;  // one attention matrix per scale, always present
  std::vector<Tensor> head_w, head_b;
  std::vector<Tensor> class_w, class_b;  // attached by fine-tuning

  bool has_class_head() const { return !class_w.empty(); }
};

// Glorot-uniform weights, zero biases, epsilon per config. Deterministic per
// seed. The attention matrices exist for every pooling mode so checkpoints
// stay uniform across ablations.
ModelParams init_params(const ModelConfig& cfg, std::uint64_t seed);

class Rng;
Tensor glorot_uniform(int fan_in, int fan_out, Rng& rng);

// Pointers to every trainable tensor in a fixed enumeration order. Fixed eps
// tensors are excluded; learned ones are included.
struct ParamRef {
  Tensor* tensor;
  int id;
  std::string name;
};
std::vector<ParamRef> param_refs(ModelParams& params, const ModelConfig& cfg);

// The same parameters registered on a tape, ids matching param_refs.
struct TapeParams {
  std::vector<Var> gin_w1, gin_b1, gin_w2, gin_b2, gin_eps;
  std::vector<Var> theta;
  std::vector<Var> head_w, head_b;
  std::vector<Var> class_w, class_b;
};
TapeParams register_params(Tape& tape, ModelParams& params, const ModelConfig& cfg);

// One GIN layer on the tape: MLP((1+eps) * U + A * U).
Var gin_layer_var(Tape& tape, Var u_prev, Var adjacency, Var w1, Var b1, Var w2, Var b2,
                  std::optional<Var> eps_learned, double eps_fixed);

// Plain-value wrapper used by tests and shape probes.
Tensor gin_layer_value(const LabeledGraph& g, const Tensor& u_prev, const GinLayerParams& layer,
                       const ModelConfig& cfg);

// Gated attention pooling: sum_n sigmoid(u_n . relu(theta * mean(U))) u_n.
Var attention_pool_var(Tape& tape, Var u, Var theta);
Tensor attention_pool_value(const Tensor& u, const Tensor& theta);

struct GraphEmbedding {
  int gid = 0;
  std::vector<double> h;

  int dim() const { return static_cast<int>(h.size()); }
};

// Full forward pass to the graph-level embedding, 1 x embed_dim.
// `features` is the base feature matrix from encode_features; the supersource
// variant augments graph and features internally.
Var graph_embed_var(Tape& tape, const LabeledGraph& g, const Tensor& features,
                    const TapeParams& tp, const ModelConfig& cfg);

GraphEmbedding graph_embed(const LabeledGraph& g, const Tensor& features, ModelParams& params,
                           const ModelConfig& cfg);

// Class-head logits over an embedding, 1 x num_classes.
Var class_logits_var(Tape& tape, Var h, const TapeParams& tp);

double predict_distance(const GraphEmbedding& a, const GraphEmbedding& b);
double predict_similarity(const GraphEmbedding& a, const GraphEmbedding& b);

}  // namespace gedembed
