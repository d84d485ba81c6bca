#include "gedembed/train/adam.hpp"

#include <cmath>

#include "gedembed/errors.hpp"

namespace gedembed {

void AdamConfig::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw_config("adam: lr must be positive");
  if (beta1 < 0.0 || beta1 >= 1.0) throw_config("adam: beta1 must be in [0, 1)");
  if (beta2 < 0.0 || beta2 >= 1.0) throw_config("adam: beta2 must be in [0, 1)");
  if (!(eps > 0.0)) throw_config("adam: eps must be positive");
}

OptimizerState init_optimizer(const std::vector<ParamRef>& params) {
  OptimizerState state;
  for (const ParamRef& p : params) {
    state.m.emplace_back(p.tensor->rows, p.tensor->cols);
    state.v.emplace_back(p.tensor->rows, p.tensor->cols);
  }
  return state;
}

void adam_step(const std::vector<ParamRef>& params, const GradientMap& grads,
               OptimizerState& state, const AdamConfig& cfg) {
  cfg.validate();
  if (state.m.size() != params.size() || state.v.size() != params.size())
    throw_validation("adam: optimizer state does not match parameter count");
  for (const ParamRef& p : params) {
    const Tensor* g = grads.find(p.id);
    if (!g) continue;
    if (!g->same_shape(*p.tensor))
      throw_validation("adam: gradient shape mismatch for " + p.name);
    if (!g->all_finite()) throw_numeric("adam: non-finite gradient for " + p.name);
  }
  state.t += 1;
  double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor& theta = *params[i].tensor;
    Tensor& m = state.m[i];
    Tensor& v = state.v[i];
    const Tensor* g = grads.find(params[i].id);
    for (size_t j = 0; j < theta.data.size(); ++j) {
      double gj = g ? g->data[j] : 0.0;
      m.data[j] = cfg.beta1 * m.data[j] + (1.0 - cfg.beta1) * gj;
      v.data[j] = cfg.beta2 * v.data[j] + (1.0 - cfg.beta2) * gj * gj;
      double mhat = m.data[j] / bc1;
      double vhat = v.data[j] / bc2;
      theta.data[j] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

}  // namespace gedembed
