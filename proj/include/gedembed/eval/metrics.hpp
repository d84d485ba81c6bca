#pragma once

#include <optional>
#include <vector>

namespace gedembed {

// Kendall tau-b with tie corrections, symmetric in its arguments. Returns
// nullopt when either side is all-constant (the coefficient is undefined);
// callers surface that as a flagged report field.
std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);

// |top-k(true) intersect top-k(pred)| / k. Scores are distance-oriented:
// smaller is better, ties broken by ascending position (gid order).
double precision_at_k(const std::vector<double>& true_scores,
                      const std::vector<double>& pred_scores, int k);

struct EvalReport {
  std::optional<double> tau;  // empty when undefined on constant input
  double p_at_k = 0.0;
  int k_used = 0;  // p@10 falls back to p@min(10, corpus) on tiny corpora
  double mse = 0.0;
  std::optional<double> accuracy;
};

}  // namespace gedembed
