#include "gedembed/ged/pairs.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gedembed/errors.hpp"
#include "gedembed/ged/bipartite.hpp"
#include "gedembed/ged/hed.hpp"
#include "gedembed/rng.hpp"

namespace gedembed {

double nged(int ged, int n1, int n2) {
  if (ged < 0) throw_validation("nged: negative ged");
  if (n1 < 1 || n2 < 1) throw_validation("nged: node counts must be positive");
  return 2.0 * ged / (n1 + n2);
}

const PairRecord* PairTable::find(int gid_a, int gid_b) const {
  int lo = std::min(gid_a, gid_b), hi = std::max(gid_a, gid_b);
  PairRecord probe;
  probe.gid_i = lo;
  probe.gid_j = hi;
  auto it = std::lower_bound(records.begin(), records.end(), probe,
                             [](const PairRecord& a, const PairRecord& b) {
                               return std::pair(a.gid_i, a.gid_j) < std::pair(b.gid_i, b.gid_j);
                             });
  if (it != records.end() && it->gid_i == lo && it->gid_j == hi) return &*it;
  return nullptr;
}

GedResult ged_ensemble(const LabeledGraph& g1, const LabeledGraph& g2, int beam_width) {
  GedResult beam = ged_beam(g1, g2, beam_width);
  GedResult bip = ged_bipartite(g1, g2);
  GedResult best = beam.value <= bip.value ? beam : bip;
  best.solver = GedSolver::ensemble;
  best.beam_width = beam_width;
  return best;
}

namespace {

GedResult solve_pair(const LabeledGraph& a, const LabeledGraph& b, const PairJobConfig& cfg) {
  switch (cfg.solver) {
    case GedSolver::astar:
      return ged_exact_astar(a, b, cfg.node_limit, cfg.expansion_limit);
    case GedSolver::beam:
      return ged_beam(a, b, cfg.beam_width);
    case GedSolver::bipartite:
      return ged_bipartite(a, b);
    case GedSolver::hed:
      return hed_lower(a, b);
    case GedSolver::ensemble:
      return ged_ensemble(a, b, cfg.beam_width);
  }
  throw_config("pairs: unknown solver");
}

}  // namespace

PairTable ground_truth_pairs(const Dataset& ds, const PairJobConfig& cfg) {
  if (ds.graphs.empty()) throw_validation("pairs: empty dataset");
  ds.validate_unique_gids();
  if (cfg.jobs < 1) throw_config("pairs: jobs must be positive");
  if (cfg.beam_width < 1) throw_config("pairs: beam width must be positive");

  std::vector<int> gids;
  gids.reserve(ds.graphs.size());
  for (const auto& g : ds.graphs) gids.push_back(g.gid());
  std::sort(gids.begin(), gids.end());

  std::vector<std::pair<int, int>> pairs;
  for (size_t a = 0; a < gids.size(); ++a)
    for (size_t b = a + 1; b < gids.size(); ++b) pairs.emplace_back(gids[a], gids[b]);

  if (cfg.pair_budget >= 0 && cfg.pair_budget < static_cast<long long>(pairs.size())) {
    Rng rng = Rng::derived(cfg.seed, "pairs");
    for (long long k = 0; k < cfg.pair_budget; ++k) {
      size_t pick = static_cast<size_t>(k) +
                    static_cast<size_t>(rng.bounded(static_cast<std::uint64_t>(pairs.size() - static_cast<size_t>(k))));
      std::swap(pairs[static_cast<size_t>(k)], pairs[pick]);
    }
    pairs.resize(static_cast<size_t>(cfg.pair_budget));
    std::sort(pairs.begin(), pairs.end());
  }

  std::vector<PairRecord> records(pairs.size());
  auto solve_at = [&](size_t idx) {
    auto [ga, gb] = pairs[idx];
    const LabeledGraph& a = ds.by_gid(ga);
    const LabeledGraph& b = ds.by_gid(gb);
    GedResult res = solve_pair(a, b, cfg);
    PairRecord rec;
    rec.gid_i = ga;
    rec.gid_j = gb;
    rec.ged = res.value;
    rec.nged = nged(res.value, a.num_nodes(), b.num_nodes());
    records[idx] = rec;
  };

  if (cfg.jobs == 1 || pairs.size() < 2) {
    for (size_t idx = 0; idx < pairs.size(); ++idx) solve_at(idx);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        size_t idx = next.fetch_add(1);
        if (idx >= pairs.size()) return;
        try {
          solve_at(idx);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    int n_threads = std::min<long long>(cfg.jobs, static_cast<long long>(pairs.size()));
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  PairTable table;
  table.records = std::move(records);
  return table;
}

namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

}  // namespace

void save_pair_table(const PairTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_resource("pairs: cannot open " + path + " for writing");
  out << "gid_i,gid_j,ged,nged,sim\n";
  for (const PairRecord& r : table.records) {
    out << r.gid_i << ',' << r.gid_j << ',' << r.ged << ',' << format_real(r.nged) << ',';
    if (r.sim) out << format_real(*r.sim);
    out << '\n';
  }
  if (!out) throw_resource("pairs: write failed for " + path);
}

PairTable load_pair_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_resource("pairs: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw_parse("pairs: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "gid_i,gid_j,ged,nged,sim")
    throw_parse("pairs: unexpected header in " + path);

  PairTable table;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 5)
      throw_parse("pairs: line " + std::to_string(line_no) + ": expected 5 fields");
    PairRecord rec;
    try {
      rec.gid_i = std::stoi(fields[0]);
      rec.gid_j = std::stoi(fields[1]);
      rec.ged = std::stoi(fields[2]);
      rec.nged = std::stod(fields[3]);
      if (!fields[4].empty()) rec.sim = std::stod(fields[4]);
    } catch (const std::exception&) {
      throw_parse("pairs: line " + std::to_string(line_no) + ": bad numeric field");
    }
    if (rec.gid_i >= rec.gid_j)
      throw_parse("pairs: line " + std::to_string(line_no) + ": gid_i must be < gid_j");
    table.records.push_back(rec);
  }
  std::sort(table.records.begin(), table.records.end(), [](const PairRecord& a, const PairRecord& b) {
    return std::pair(a.gid_i, a.gid_j) < std::pair(b.gid_i, b.gid_j);
  });
  return table;
}

}  // namespace gedembed
