#include "gedembed/tensor/grad_check.hpp"

#include <cmath>

namespace gedembed {

GradCheckReport finite_diff_check(
    const std::function<double(const std::vector<Tensor>&)>& loss_value,
    const std::function<std::vector<Tensor>(const std::vector<Tensor>&)>& loss_grads,
    const std::vector<Tensor>& params, double step, double tolerance,
    const std::vector<std::string>& names) {
  if (step <= 0.0) throw_validation("finite_diff_check: step must be > 0");

  std::vector<Tensor> analytic = loss_grads(params);
  if (analytic.size() != params.size())
    throw_validation("finite_diff_check: gradient count does not match parameter count");

  GradCheckReport report;
  report.tolerance = tolerance;
  std::vector<Tensor> work = params;
  for (size_t p = 0; p < params.size(); ++p) {
    if (!analytic[p].same_shape(params[p]))
      throw_validation("finite_diff_check: gradient shape does not match parameter");
    GradCheckEntry entry;
    entry.name = p < names.size() ? names[p] : "param" + std::to_string(p);
    for (size_t i = 0; i < params[p].data.size(); ++i) {
      double orig = work[p].data[i];
      work[p].data[i] = orig + step;
      double up = loss_value(work);
      work[p].data[i] = orig - step;
      double down = loss_value(work);
      work[p].data[i] = orig;
      double numeric = (up - down) / (2.0 * step);
      double a = analytic[p].data[i];
      double rel = std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
      entry.max_rel_err = std::max(entry.max_rel_err, rel);
    }
    report.max_rel_err = std::max(report.max_rel_err, entry.max_rel_err);
    report.per_param.push_back(std::move(entry));
  }
  report.passed = report.max_rel_err <= tolerance;
  return report;
}

}  // namespace gedembed
