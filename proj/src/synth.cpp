#include "gedembed/synth.hpp"

#include <algorithm>

#include "gedembed/errors.hpp"

namespace gedembed {

const char* family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::path: return "path";
    case GraphFamily::cycle: return "cycle";
    case GraphFamily::star: return "star";
    case GraphFamily::complete: return "complete";
    case GraphFamily::random_tree: return "random_tree";
    case GraphFamily::erdos_renyi: return "erdos_renyi";
  }
  return "?";
}

GraphFamily parse_family(const std::string& token, double* er_p) {
  std::string name = token;
  auto paren = name.find('(');
  if (paren != std::string::npos) {
    if (name.back() != ')') throw_config("family token: unbalanced '(' in '" + token + "'");
    std::string arg = name.substr(paren + 1, name.size() - paren - 2);
    name = name.substr(0, paren);
    try {
      double p = std::stod(arg);
      if (p < 0.0 || p > 1.0) throw_config("edge probability must be in [0,1]");
      if (er_p) *er_p = p;
    } catch (const std::invalid_argument&) {
      throw_config("family token: bad probability '" + arg + "'");
    }
  }
  if (name.size() > 1 && name.back() == 's' && name != "erdos_renyis") name.pop_back();
  if (name == "path") return GraphFamily::path;
  if (name == "cycle") return GraphFamily::cycle;
  if (name == "star") return GraphFamily::star;
  if (name == "complete") return GraphFamily::complete;
  if (name == "random_tree" || name == "random_trees" || name == "tree")
    return GraphFamily::random_tree;
  if (name == "erdos_renyi" || name == "er") return GraphFamily::erdos_renyi;
  throw_config("unknown graph family '" + token + "'");
}

FamilySpec parse_family_spec(const std::string& token) {
  // family:count:lo..hi
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t colon = token.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(token.substr(start));
      break;
    }
    parts.push_back(token.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() != 3) throw_config("family spec must be family:count:lo..hi, got '" + token + "'");
  FamilySpec spec;
  spec.family = parse_family(parts[0], &spec.er_p);
  try {
    spec.count = std::stoi(parts[1]);
  } catch (const std::exception&) {
    throw_config("family spec: bad count in '" + token + "'");
  }
  if (spec.count < 1) throw_config("family spec: count must be >= 1");
  std::string sizes = parts[2];
  auto dots = sizes.find("..");
  try {
    if (dots == std::string::npos) {
      spec.min_size = spec.max_size = std::stoi(sizes);
    } else {
      spec.min_size = std::stoi(sizes.substr(0, dots));
      spec.max_size = std::stoi(sizes.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw_config("family spec: bad size range in '" + token + "'");
  }
  if (spec.min_size < 1 || spec.max_size < spec.min_size)
    throw_config("family spec: sizes must satisfy 1 <= lo <= hi");
  return spec;
}

LabeledGraph synth_graph(GraphFamily family, int gid, int size,
                         const std::vector<std::string>& alphabet, double er_p, Rng& rng) {
  if (size < 1) throw_config("synth_graph: size must be >= 1");
  if (alphabet.empty()) throw_config("synth_graph: empty label alphabet");
  std::vector<std::pair<int, int>> edges;
  switch (family) {
    case GraphFamily::path:
      for (int i = 0; i + 1 < size; ++i) edges.emplace_back(i, i + 1);
      break;
    case GraphFamily::cycle:
      for (int i = 0; i + 1 < size; ++i) edges.emplace_back(i, i + 1);
      if (size >= 3) edges.emplace_back(size - 1, 0);
      break;
    case GraphFamily::star:
      for (int i = 1; i < size; ++i) edges.emplace_back(0, i);
      break;
    case GraphFamily::complete:
      for (int u = 0; u < size; ++u)
        for (int v = u + 1; v < size; ++v) edges.emplace_back(u, v);
      break;
    case GraphFamily::random_tree:
      for (int i = 1; i < size; ++i)
        edges.emplace_back(static_cast<int>(rng.bounded(static_cast<uint64_t>(i))), i);
      break;
    case GraphFamily::erdos_renyi:
      for (int u = 0; u < size; ++u)
        for (int v = u + 1; v < size; ++v)
          if (rng.bernoulli(er_p)) edges.emplace_back(u, v);
      break;
  }
  std::vector<std::string> labels(static_cast<size_t>(size));
  for (auto& l : labels) l = alphabet[rng.bounded(alphabet.size())];
  return LabeledGraph(gid, std::move(labels), std::move(edges), family_name(family));
}

Dataset synth_generate(const std::vector<FamilySpec>& specs, uint64_t seed) {
  if (specs.empty()) throw_config("synth_generate: empty family spec");
  Dataset ds;
  Rng rng = Rng::derived(seed, "synth");
  int gid = 0;
  for (const auto& spec : specs) {
    for (int i = 0; i < spec.count; ++i) {
      int size = static_cast<int>(rng.uniform_int(spec.min_size, spec.max_size));
      ds.graphs.push_back(synth_graph(spec.family, gid++, size, spec.alphabet, spec.er_p, rng));
    }
  }
  return ds;
}

}  // namespace gedembed
