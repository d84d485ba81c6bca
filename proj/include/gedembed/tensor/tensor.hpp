#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gedembed/errors.hpp"

namespace gedembed {

// Dense row-major 2-D tensor of 64-bit reals. Scalars are 1x1, row vectors
// 1xD. This is the only value type the compute kernel deals in.
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {
    if (r < 0 || c < 0) throw_validation("Tensor: negative shape");
  }
  Tensor(int r, int c, std::vector<double> values) : rows(r), cols(c), data(std::move(values)) {
    if (data.size() != static_cast<size_t>(r) * c)
      throw_validation("Tensor: data length does not match shape");
  }

  static Tensor scalar(double v) { return Tensor(1, 1, {v}); }
  static Tensor row(std::vector<double> values) {
    int c = static_cast<int>(values.size());
    return Tensor(1, c, std::move(values));
  }
  static Tensor identity(int n) {
    Tensor t(n, n);
    for (int i = 0; i < n; ++i) t.at(i, i) = 1.0;
    return t;
  }

  size_t size() const { return data.size(); }
  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  bool is_scalar() const { return rows == 1 && cols == 1; }
  double scalar_value() const {
    if (!is_scalar()) throw_validation("Tensor: not a scalar");
    return data[0];
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }

  std::string shape_str() const {
    return "(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
  }
};

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw_validation("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace gedembed
