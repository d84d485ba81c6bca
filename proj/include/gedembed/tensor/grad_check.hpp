#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gedembed/tensor/tensor.hpp"

namespace gedembed {

struct GradCheckEntry {
  std::string name;
  double max_rel_err = 0.0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> per_param;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Compares an analytic gradient against central finite differences.
// `loss_value` evaluates the scalar loss at the given parameter values;
// `loss_grads` returns one gradient tensor per parameter (same order/shape).
// The error is |analytic - numeric| / max(1, |analytic|, |numeric|), reported
// per parameter tensor as the max over its elements.
GradCheckReport finite_diff_check(
    const std::function<double(const std::vector<Tensor>&)>& loss_value,
    const std::function<std::vector<Tensor>(const std::vector<Tensor>&)>& loss_grads,
    const std::vector<Tensor>& params, double step, double tolerance,
    const std::vector<std::string>& names = {});

}  // namespace gedembed
