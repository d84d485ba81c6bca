#include "gedembed/ged/hed.hpp"

#include <algorithm>
#include <cstdlib>

namespace gedembed {

namespace {

// Costs carried in quarter units so everything stays integral:
// delete/insert a node = 1 + deg/2 -> 4 + 2*deg
// halved substitution  = (label + |deg diff|/2) / 2 -> 2*label + |deg diff|
long long side_sum_q(const LabeledGraph& a, const LabeledGraph& b) {
  long long total = 0;
  for (int u = 0; u < a.num_nodes(); ++u) {
    long long best = 4 + 2LL * a.degree(u);
    for (int v = 0; v < b.num_nodes(); ++v) {
      long long sub = (a.label(u) != b.label(v) ? 2 : 0) + std::abs(a.degree(u) - b.degree(v));
      best = std::min(best, sub);
    }
    total += best;
  }
  return total;
}

}  // namespace

GedResult hed_lower(const LabeledGraph& g1, const LabeledGraph& g2) {
  long long quarters = side_sum_q(g1, g2) + side_sum_q(g2, g1);
  long long value = (quarters + 3) / 4;
  value = std::max(value, static_cast<long long>(std::abs(g1.num_nodes() - g2.num_nodes())));
  GedResult r;
  r.value = static_cast<int>(value);
  r.bound = GedBound::lower;
  r.solver = GedSolver::hed;
  return r;
}

}  // namespace gedembed
