#include "gedembed/tensor/tape.hpp"

#include <algorithm>
#include <cmath>

namespace gedembed {

void GradientMap::add(int param_id, Tensor grad) {
  auto it = grads_.find(param_id);
  if (it == grads_.end()) {
    grads_.emplace(param_id, std::move(grad));
  } else {
    Tensor& g = it->second;
    for (size_t i = 0; i < g.data.size(); ++i) g.data[i] += grad.data[i];
  }
}

const Tensor* GradientMap::find(int param_id) const {
  auto it = grads_.find(param_id);
  return it == grads_.end() ? nullptr : &it->second;
}

const char* Tape::op_name(Op op) {
  switch (op) {
    case Op::leaf: return "leaf";
    case Op::matmul: return "matmul";
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::scale: return "scale";
    case Op::scalar_mul: return "scalar_mul";
    case Op::mul: return "mul";
    case Op::relu: return "relu";
    case Op::sigmoid: return "sigmoid";
    case Op::concat_cols: return "concat_cols";
    case Op::row_sum: return "row_sum";
    case Op::row_mean: return "row_mean";
    case Op::col_mean: return "col_mean";
    case Op::tile_rows: return "tile_rows";
    case Op::transpose: return "transpose";
    case Op::squared_l2_rowdiff: return "squared_l2_rowdiff";
    case Op::dot: return "dot";
    case Op::square: return "square";
    case Op::take_row: return "take_row";
    case Op::softmax_xent: return "softmax_xent";
  }
  return "?";
}

int Tape::push(Node n) {
  if (n.op != Op::leaf && !n.value.all_finite())
    throw_numeric(std::string("non-finite output of op ") + op_name(n.op));
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

Var Tape::constant(Tensor value) {
  Node n;
  n.value = std::move(value);
  return Var{this, push(std::move(n))};
}

Var Tape::param(const Tensor& value, int param_id) {
  Node n;
  n.value = value;
  n.param_id = param_id;
  return Var{this, push(std::move(n))};
}

const Tensor& Tape::value(Var v) const { return nodes_[static_cast<size_t>(v.node)].value; }

namespace {

void check_same_tape(Var a, Var b) {
  if (a.tape == nullptr || a.tape != b.tape)
    throw_validation("tape op: operands belong to different tapes");
}

void check_shape(bool ok, const char* op, const Tensor& a, const Tensor& b) {
  if (!ok)
    throw_validation(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}

}  // namespace

Var matmul(Var va, Var vb) {
  check_same_tape(va, vb);
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  const Tensor& b = t.val(vb.node);
  check_shape(a.cols == b.rows, "matmul", a, b);
  Tensor out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  Tape::Node n;
  n.op = Tape::Op::matmul;
  n.a = va.node;
  n.b = vb.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var Tape::make_binary(Var va, Var vb, Tape::Op op) {
  check_same_tape(va, vb);
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  const Tensor& b = t.val(vb.node);
  check_shape(a.same_shape(b), Tape::op_name(op), a, b);
  Tensor out(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) {
    switch (op) {
      case Tape::Op::add: out.data[i] = a.data[i] + b.data[i]; break;
      case Tape::Op::sub: out.data[i] = a.data[i] - b.data[i]; break;
      case Tape::Op::mul: out.data[i] = a.data[i] * b.data[i]; break;
      default: throw_validation("binary_elementwise: bad op");
    }
  }
  Tape::Node n;
  n.op = op;
  n.a = va.node;
  n.b = vb.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var add(Var a, Var b) { return Tape::make_binary(a, b, Tape::Op::add); }
Var sub(Var a, Var b) { return Tape::make_binary(a, b, Tape::Op::sub); }
Var mul(Var a, Var b) { return Tape::make_binary(a, b, Tape::Op::mul); }

Var scale(Var va, double c) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  Tensor out(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = c * a.data[i];
  Tape::Node n;
  n.op = Tape::Op::scale;
  n.a = va.node;
  n.c = c;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var scalar_mul(Var vs, Var va) {
  check_same_tape(vs, va);
  Tape& t = *vs.tape;
  const Tensor& s = t.val(vs.node);
  const Tensor& a = t.val(va.node);
  if (!s.is_scalar()) throw_validation("scalar_mul: first operand must be 1x1");
  Tensor out(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = s.data[0] * a.data[i];
  Tape::Node n;
  n.op = Tape::Op::scalar_mul;
  n.a = vs.node;
  n.b = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var relu(Var va) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  Tensor out(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] > 0.0 ? a.data[i] : 0.0;
  Tape::Node n;
  n.op = Tape::Op::relu;
  n.a = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var sigmoid(Var va) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  Tensor out(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = 1.0 / (1.0 + std::exp(-a.data[i]));
  Tape::Node n;
  n.op = Tape::Op::sigmoid;
  n.a = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw_validation("concat_cols: no inputs");
  Tape& t = *parts[0].tape;
  int rows = t.val(parts[0].node).rows;
  int cols = 0;
  for (Var p : parts) {
    check_same_tape(parts[0], p);
    const Tensor& v = t.val(p.node);
    if (v.rows != rows) throw_validation("concat_cols: row mismatch");
    cols += v.cols;
  }
  Tensor out(rows, cols);
  int off = 0;
  for (Var p : parts) {
    const Tensor& v = t.val(p.node);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < v.cols; ++c) out.at(r, off + c) = v.at(r, c);
    off += v.cols;
  }
  Tape::Node n;
  n.op = Tape::Op::concat_cols;
  for (Var p : parts) n.inputs.push_back(p.node);
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var Tape::make_row_reduce(Var va, Tape::Op op) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  Tensor out(a.rows, 1);
  for (int r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (int c = 0; c < a.cols; ++c) s += a.at(r, c);
    out.at(r, 0) = op == Tape::Op::row_mean ? s / a.cols : s;
  }
  Tape::Node n;
  n.op = op;
  n.a = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var row_sum(Var a) { return Tape::make_row_reduce(a, Tape::Op::row_sum); }
Var row_mean(Var a) { return Tape::make_row_reduce(a, Tape::Op::row_mean); }

Var col_mean(Var va) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  if (a.rows < 1) throw_validation("col_mean: empty input");
  Tensor out(1, a.cols);
  for (int c = 0; c < a.cols; ++c) {
    double s = 0.0;
    for (int r = 0; r < a.rows; ++r) s += a.at(r, c);
    out.at(0, c) = s / a.rows;
  }
  Tape::Node n;
  n.op = Tape::Op::col_mean;
  n.a = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var tile_rows(Var vv, int rows) {
  Tape& t = *vv.tape;
  const Tensor& v = t.val(vv.node);
  if (v.rows != 1) throw_validation("tile_rows: input must be a row vector");
  if (rows < 1) throw_validation("tile_rows: rows must be >= 1");
  Tensor out(rows, v.cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < v.cols; ++c) out.at(r, c) = v.at(0, c);
  Tape::Node n;
  n.op = Tape::Op::tile_rows;
  n.a = vv.node;
  n.index = rows;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var transpose(Var va) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  Tensor out(a.cols, a.rows);
  for (int r = 0; r < a.rows; ++r)
    for (int c = 0; c < a.cols; ++c) out.at(c, r) = a.at(r, c);
  Tape::Node n;
  n.op = Tape::Op::transpose;
  n.a = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var squared_l2_rowdiff(Var va, Var vb) {
  check_same_tape(va, vb);
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  const Tensor& b = t.val(vb.node);
  check_shape(a.rows == 1 && b.rows == 1 && a.cols == b.cols, "squared_l2_rowdiff", a, b);
  double s = 0.0;
  for (int c = 0; c < a.cols; ++c) {
    double d = a.at(0, c) - b.at(0, c);
    s += d * d;
  }
  Tape::Node n;
  n.op = Tape::Op::squared_l2_rowdiff;
  n.a = va.node;
  n.b = vb.node;
  n.value = Tensor::scalar(s);
  return Var{&t, t.push(std::move(n))};
}

Var dot(Var va, Var vb) {
  check_same_tape(va, vb);
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  const Tensor& b = t.val(vb.node);
  check_shape(a.rows == 1 && b.rows == 1 && a.cols == b.cols, "dot", a, b);
  double s = 0.0;
  for (int c = 0; c < a.cols; ++c) s += a.at(0, c) * b.at(0, c);
  Tape::Node n;
  n.op = Tape::Op::dot;
  n.a = va.node;
  n.b = vb.node;
  n.value = Tensor::scalar(s);
  return Var{&t, t.push(std::move(n))};
}

Var square(Var va) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  Tensor out(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] * a.data[i];
  Tape::Node n;
  n.op = Tape::Op::square;
  n.a = va.node;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var take_row(Var va, int row) {
  Tape& t = *va.tape;
  const Tensor& a = t.val(va.node);
  if (row < 0 || row >= a.rows) throw_validation("take_row: row out of range");
  Tensor out(1, a.cols);
  for (int c = 0; c < a.cols; ++c) out.at(0, c) = a.at(row, c);
  Tape::Node n;
  n.op = Tape::Op::take_row;
  n.a = va.node;
  n.index = row;
  n.value = std::move(out);
  return Var{&t, t.push(std::move(n))};
}

Var softmax_xent(Var vlogits, int target_class) {
  Tape& t = *vlogits.tape;
  const Tensor& z = t.val(vlogits.node);
  if (z.rows != 1) throw_validation("softmax_xent: logits must be a row vector");
  if (target_class < 0 || target_class >= z.cols)
    throw_validation("softmax_xent: target class out of range");
  double zmax = *std::max_element(z.data.begin(), z.data.end());
  double lse = 0.0;
  for (double v : z.data) lse += std::exp(v - zmax);
  lse = zmax + std::log(lse);
  Tape::Node n;
  n.op = Tape::Op::softmax_xent;
  n.a = vlogits.node;
  n.index = target_class;
  n.value = Tensor::scalar(lse - z.at(0, target_class));
  return Var{&t, t.push(std::move(n))};
}

GradientMap Tape::backward(Var loss) {
  if (loss.tape != this) throw_validation("backward: loss from another tape");
  const Tensor& lv = val(loss.node);
  if (!lv.is_scalar()) throw_validation("backward: loss must be a 1x1 scalar");

  std::vector<Tensor> bar(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i)
    bar[i] = Tensor(nodes_[i].value.rows, nodes_[i].value.cols);
  bar[static_cast<size_t>(loss.node)].data[0] = 1.0;

  for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
    const Node& n = nodes_[static_cast<size_t>(i)];
    const Tensor& g = bar[static_cast<size_t>(i)];
    switch (n.op) {
      case Op::leaf:
        break;
      case Op::matmul: {
        const Tensor& a = val(n.a);
        const Tensor& b = val(n.b);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        Tensor& db = bar[static_cast<size_t>(n.b)];
        // da += g * b^T ; db += a^T * g
        for (int r = 0; r < a.rows; ++r)
          for (int k = 0; k < a.cols; ++k) {
            double s = 0.0;
            for (int c = 0; c < b.cols; ++c) s += g.at(r, c) * b.at(k, c);
            da.at(r, k) += s;
          }
        for (int k = 0; k < b.rows; ++k)
          for (int c = 0; c < b.cols; ++c) {
            double s = 0.0;
            for (int r = 0; r < a.rows; ++r) s += a.at(r, k) * g.at(r, c);
            db.at(k, c) += s;
          }
        break;
      }
      case Op::add: {
        Tensor& da = bar[static_cast<size_t>(n.a)];
        Tensor& db = bar[static_cast<size_t>(n.b)];
        for (size_t j = 0; j < g.data.size(); ++j) {
          da.data[j] += g.data[j];
          db.data[j] += g.data[j];
        }
        break;
      }
      case Op::sub: {
        Tensor& da = bar[static_cast<size_t>(n.a)];
        Tensor& db = bar[static_cast<size_t>(n.b)];
        for (size_t j = 0; j < g.data.size(); ++j) {
          da.data[j] += g.data[j];
          db.data[j] -= g.data[j];
        }
        break;
      }
      case Op::scale: {
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (size_t j = 0; j < g.data.size(); ++j) da.data[j] += n.c * g.data[j];
        break;
      }
      case Op::scalar_mul: {
        const Tensor& s = val(n.a);
        const Tensor& a = val(n.b);
        Tensor& ds = bar[static_cast<size_t>(n.a)];
        Tensor& da = bar[static_cast<size_t>(n.b)];
        double acc = 0.0;
        for (size_t j = 0; j < g.data.size(); ++j) {
          acc += g.data[j] * a.data[j];
          da.data[j] += s.data[0] * g.data[j];
        }
        ds.data[0] += acc;
        break;
      }
      case Op::mul: {
        const Tensor& a = val(n.a);
        const Tensor& b = val(n.b);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        Tensor& db = bar[static_cast<size_t>(n.b)];
        for (size_t j = 0; j < g.data.size(); ++j) {
          da.data[j] += g.data[j] * b.data[j];
          db.data[j] += g.data[j] * a.data[j];
        }
        break;
      }
      case Op::relu: {
        const Tensor& a = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        // subgradient at 0 is 0
        for (size_t j = 0; j < g.data.size(); ++j)
          if (a.data[j] > 0.0) da.data[j] += g.data[j];
        break;
      }
      case Op::sigmoid: {
        const Tensor& out = n.value;
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (size_t j = 0; j < g.data.size(); ++j)
          da.data[j] += g.data[j] * out.data[j] * (1.0 - out.data[j]);
        break;
      }
      case Op::concat_cols: {
        int off = 0;
        for (int in : n.inputs) {
          const Tensor& part = val(in);
          Tensor& dp = bar[static_cast<size_t>(in)];
          for (int r = 0; r < part.rows; ++r)
            for (int c = 0; c < part.cols; ++c) dp.at(r, c) += g.at(r, off + c);
          off += part.cols;
        }
        break;
      }
      case Op::row_sum: {
        const Tensor& a = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (int r = 0; r < a.rows; ++r)
          for (int c = 0; c < a.cols; ++c) da.at(r, c) += g.at(r, 0);
        break;
      }
      case Op::row_mean: {
        const Tensor& a = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (int r = 0; r < a.rows; ++r)
          for (int c = 0; c < a.cols; ++c) da.at(r, c) += g.at(r, 0) / a.cols;
        break;
      }
      case Op::col_mean: {
        const Tensor& a = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (int r = 0; r < a.rows; ++r)
          for (int c = 0; c < a.cols; ++c) da.at(r, c) += g.at(0, c) / a.rows;
        break;
      }
      case Op::tile_rows: {
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (int r = 0; r < n.value.rows; ++r)
          for (int c = 0; c < n.value.cols; ++c) da.at(0, c) += g.at(r, c);
        break;
      }
      case Op::transpose: {
        const Tensor& a = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (int r = 0; r < a.rows; ++r)
          for (int c = 0; c < a.cols; ++c) da.at(r, c) += g.at(c, r);
        break;
      }
      case Op::squared_l2_rowdiff: {
        const Tensor& a = val(n.a);
        const Tensor& b = val(n.b);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        Tensor& db = bar[static_cast<size_t>(n.b)];
        double gg = g.data[0];
        for (int c = 0; c < a.cols; ++c) {
          double d = 2.0 * (a.at(0, c) - b.at(0, c)) * gg;
          da.at(0, c) += d;
          db.at(0, c) -= d;
        }
        break;
      }
      case Op::dot: {
        const Tensor& a = val(n.a);
        const Tensor& b = val(n.b);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        Tensor& db = bar[static_cast<size_t>(n.b)];
        double gg = g.data[0];
        for (int c = 0; c < a.cols; ++c) {
          da.at(0, c) += gg * b.at(0, c);
          db.at(0, c) += gg * a.at(0, c);
        }
        break;
      }
      case Op::square: {
        const Tensor& a = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (size_t j = 0; j < g.data.size(); ++j) da.data[j] += 2.0 * a.data[j] * g.data[j];
        break;
      }
      case Op::take_row: {
        Tensor& da = bar[static_cast<size_t>(n.a)];
        for (int c = 0; c < n.value.cols; ++c) da.at(n.index, c) += g.at(0, c);
        break;
      }
      case Op::softmax_xent: {
        const Tensor& z = val(n.a);
        Tensor& da = bar[static_cast<size_t>(n.a)];
        double zmax = *std::max_element(z.data.begin(), z.data.end());
        double denom = 0.0;
        for (double v : z.data) denom += std::exp(v - zmax);
        double gg = g.data[0];
        for (int c = 0; c < z.cols; ++c) {
          double p = std::exp(z.at(0, c) - zmax) / denom;
          da.at(0, c) += gg * (p - (c == n.index ? 1.0 : 0.0));
        }
        break;
      }
    }
  }

  GradientMap grads;
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].param_id >= 0) grads.add(nodes_[i].param_id, std::move(bar[i]));
  return grads;
}

}  // namespace gedembed
