#pragma once

#include <string>
#include <vector>

#include "gedembed/graph.hpp"
#include "gedembed/rng.hpp"

namespace gedembed {

enum class GraphFamily { path, cycle, star, complete, random_tree, erdos_renyi };

const char* family_name(GraphFamily f);

// Parses a family token; accepts the canonical name, a trailing-s plural, and
// "erdos_renyi(p)" with an inline edge probability.
GraphFamily parse_family(const std::string& token, double* er_p = nullptr);

struct FamilySpec {
  GraphFamily family = GraphFamily::path;
  int count = 0;
  int min_size = 1;
  int max_size = 1;
  double er_p = 0.5;  // erdos_renyi only
  std::vector<std::string> alphabet = {"A"};
};

// Parses "family:count:lo..hi" (size may also be a single integer).
FamilySpec parse_family_spec(const std::string& token);

// Generates one graph of the family; labels drawn uniformly from `alphabet`.
LabeledGraph synth_graph(GraphFamily family, int gid, int size,
                         const std::vector<std::string>& alphabet, double er_p, Rng& rng);

// Generates the whole corpus, gids 0..total-1 in spec order. glabel is the
// family name. Deterministic per seed.
Dataset synth_generate(const std::vector<FamilySpec>& specs, uint64_t seed);

}  // namespace gedembed
