#pragma once

#include <unordered_map>
#include <vector>

#include "gedembed/tensor/tensor.hpp"

namespace gedembed {

class Tape;

// Handle to a tape node. Cheap to copy; valid as long as its tape lives.
struct Var {
  Tape* tape = nullptr;
  int node = -1;
};

// Gradients keyed by parameter id. Parameters that never touched the loss
// simply have no entry (zero gradient).
class GradientMap {
 public:
  void add(int param_id, Tensor grad);
  // Returns nullptr when the parameter has no gradient entry.
  const Tensor* find(int param_id) const;
  size_t size() const { return grads_.size(); }

 private:
  std::unordered_map<int, Tensor> grads_;
};

// Reverse-mode tape over dense 2-D tensors. A tape is built fresh per forward
// pass and confined to one thread. Node order is the topological order, so
// backward is a single reverse sweep with deterministic accumulation.
class Tape {
 public:
  void reserve(size_t nodes) { nodes_.reserve(nodes); }
  size_t size() const { return nodes_.size(); }

  Var constant(Tensor value);
  Var param(const Tensor& value, int param_id);

  const Tensor& value(Var v) const;

  // Gradient of a scalar loss w.r.t. every registered parameter.
  GradientMap backward(Var loss);

  // --- differentiable kernel ops ---
  friend Var matmul(Var a, Var b);
  friend Var add(Var a, Var b);
  friend Var sub(Var a, Var b);
  friend Var scale(Var a, double c);             // constant scale
  friend Var scalar_mul(Var s, Var a);           // 1x1 tensor times matrix
  friend Var mul(Var a, Var b);                  // elementwise
  friend Var relu(Var a);
  friend Var sigmoid(Var a);
  friend Var concat_cols(const std::vector<Var>& parts);
  friend Var row_sum(Var a);                     // NxC -> Nx1
  friend Var row_mean(Var a);                    // NxC -> Nx1
  friend Var col_mean(Var a);                    // NxC -> 1xC
  friend Var tile_rows(Var v, int n);            // 1xC -> nxC
  friend Var transpose(Var a);
  friend Var squared_l2_rowdiff(Var a, Var b);   // 1xD,1xD -> scalar
  friend Var dot(Var a, Var b);                  // 1xD,1xD -> scalar
  friend Var square(Var a);                      // elementwise
  friend Var take_row(Var a, int row);           // NxC -> 1xC
  friend Var softmax_xent(Var logits, int target_class);  // 1xC -> scalar

 private:
  enum class Op {
    leaf,
    matmul,
    add,
    sub,
    scale,
    scalar_mul,
    mul,
    relu,
    sigmoid,
    concat_cols,
    row_sum,
    row_mean,
    col_mean,
    tile_rows,
    transpose,
    squared_l2_rowdiff,
    dot,
    square,
    take_row,
    softmax_xent,
  };
  static const char* op_name(Op op);

  struct Node {
    Op op = Op::leaf;
    int a = -1;
    int b = -1;
    std::vector<int> inputs;  // concat only
    double c = 0.0;           // scale factor
    int index = 0;            // take_row row / tile count / xent target
    int param_id = -1;        // leaf params
    Tensor value;
  };

  int push(Node n);
  const Tensor& val(int node) const { return nodes_[static_cast<size_t>(node)].value; }

  static Var make_binary(Var a, Var b, Op op);
  static Var make_row_reduce(Var a, Op op);

  std::vector<Node> nodes_;
};

Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var scale(Var a, double c);
Var scalar_mul(Var s, Var a);
Var mul(Var a, Var b);
Var relu(Var a);
Var sigmoid(Var a);
Var concat_cols(const std::vector<Var>& parts);
Var row_sum(Var a);
Var row_mean(Var a);
Var col_mean(Var a);
Var tile_rows(Var v, int n);
Var transpose(Var a);
Var squared_l2_rowdiff(Var a, Var b);
Var dot(Var a, Var b);
Var square(Var a);
Var take_row(Var a, int row);
Var softmax_xent(Var logits, int target_class);

}  // namespace gedembed
