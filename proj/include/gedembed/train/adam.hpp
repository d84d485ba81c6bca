#pragma once

#include <vector>

#include "gedembed/model/model.hpp"
#include "gedembed/tensor/tape.hpp"
#include "gedembed/tensor/tensor.hpp"

namespace gedembed {

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  void validate() const;
};

struct OptimizerState {
  std::vector<Tensor> m, v;  // one moment pair per parameter, same shapes
  long long t = 0;
};

OptimizerState init_optimizer(const std::vector<ParamRef>& params);

// One bias-corrected Adam update in place. Parameters without a gradient
// entry are treated as zero-gradient (moments still decay). A non-finite
// gradient anywhere aborts before any parameter or moment is touched.
void adam_step(const std::vector<ParamRef>& params, const GradientMap& grads,
               OptimizerState& state, const AdamConfig& cfg);

}  // namespace gedembed
