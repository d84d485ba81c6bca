#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gedembed/ged/astar.hpp"
#include "gedembed/ged/mapping.hpp"
#include "gedembed/graph.hpp"

namespace gedembed {

// Normalized GED: ged divided by the mean of the two node counts.
double nged(int ged, int n1, int n2);

struct PairRecord {
  int gid_i = 0;  // gid_i < gid_j always
  int gid_j = 0;
  int ged = 0;
  double nged = 0.0;
  std::optional<double> sim;
};

struct PairTable {
  std::vector<PairRecord> records;

  const PairRecord* find(int gid_a, int gid_b) const;
};

// Minimum of the beam and bipartite upper bounds, both symmetrized.
GedResult ged_ensemble(const LabeledGraph& g1, const LabeledGraph& g2, int beam_width);

struct PairJobConfig {
  GedSolver solver = GedSolver::ensemble;
  int beam_width = 100;
  int node_limit = kDefaultNodeLimit;              // astar only
  long long expansion_limit = kDefaultExpansionLimit;
  long long pair_budget = -1;                      // negative keeps every pair
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Ground-truth table over unordered graph pairs. Pairs are enumerated in
// sorted-gid order, sampled uniformly without replacement when the budget is
// smaller than the full set, and solved in parallel with the output merged in
// canonical (gid_i, gid_j) order regardless of scheduling.
PairTable ground_truth_pairs(const Dataset& ds, const PairJobConfig& cfg);

void save_pair_table(const PairTable& table, const std::string& path);
PairTable load_pair_table(const std::string& path);

}  // namespace gedembed
