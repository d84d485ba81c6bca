#include "gedembed/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gedembed/errors.hpp"

namespace gedembed {

namespace {

bool all_constant(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

// Sum over tie groups of t*(t-1)/2.
double tie_correction(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double total = 0.0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    double t = static_cast<double>(j - i);
    total += t * (t - 1.0) / 2.0;
    i = j;
  }
  return total;
}

}  // namespace

std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw_validation("kendall_tau_b: length mismatch");
  if (x.size() < 2) throw_validation("kendall_tau_b: need at least 2 observations");
  for (double v : x)
    if (!std::isfinite(v)) throw_validation("kendall_tau_b: non-finite value");
  for (double v : y)
    if (!std::isfinite(v)) throw_validation("kendall_tau_b: non-finite value");
  if (all_constant(x) || all_constant(y)) return std::nullopt;

  size_t n = x.size();
  long long concordant = 0, discordant = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j];
      double dy = y[i] - y[j];
      double s = dx * dy;
      if (s > 0.0)
        ++concordant;
      else if (s < 0.0)
        ++discordant;
    }
  double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  double n1 = tie_correction(x);
  double n2 = tie_correction(y);
  double denom = std::sqrt((n0 - n1) * (n0 - n2));
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) / denom;
}

double precision_at_k(const std::vector<double>& true_scores,
                      const std::vector<double>& pred_scores, int k) {
  if (true_scores.size() != pred_scores.size())
    throw_validation("precision_at_k: length mismatch");
  if (k <= 0) throw_validation("precision_at_k: k must be positive");
  if (static_cast<size_t>(k) > true_scores.size())
    throw_validation("precision_at_k: k exceeds the corpus size");

  auto top_k = [k](const std::vector<double>& scores) {
    std::vector<size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      if (scores[a] != scores[b]) return scores[a] < scores[b];
      return a < b;
    });
    idx.resize(static_cast<size_t>(k));
    return idx;
  };
  std::vector<size_t> t = top_k(true_scores);
  std::vector<size_t> p = top_k(pred_scores);
  std::sort(t.begin(), t.end());
  std::sort(p.begin(), p.end());
  std::vector<size_t> common;
  std::set_intersection(t.begin(), t.end(), p.begin(), p.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(k);
}

}  // namespace gedembed
