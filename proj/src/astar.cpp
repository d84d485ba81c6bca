#include "gedembed/ged/astar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "gedembed/errors.hpp"

namespace gedembed {

namespace {

constexpr int kUndecided = -2;

struct SearchCtx {
  const LabeledGraph* g1;
  const LabeledGraph* g2;
  int n1, n2;
  std::vector<int> lab1, lab2;
  int num_labels = 0;
  std::vector<int> order;  // g1 node decided at each depth
};

SearchCtx make_ctx(const LabeledGraph& a, const LabeledGraph& b) {
  SearchCtx c;
  c.g1 = &a;
  c.g2 = &b;
  c.n1 = a.num_nodes();
  c.n2 = b.num_nodes();
  std::map<std::string, int> intern;
  auto code = [&](const std::string& s) {
    auto [it, inserted] = intern.emplace(s, static_cast<int>(intern.size()));
    (void)inserted;
    return it->second;
  };
  for (int i = 0; i < c.n1; ++i) c.lab1.push_back(code(a.label(i)));
  for (int j = 0; j < c.n2; ++j) c.lab2.push_back(code(b.label(j)));
  c.num_labels = static_cast<int>(intern.size());
  c.order.resize(static_cast<size_t>(c.n1));
  std::iota(c.order.begin(), c.order.end(), 0);
  std::sort(c.order.begin(), c.order.end(), [&](int x, int y) {
    if (a.degree(x) != a.degree(y)) return a.degree(x) > a.degree(y);
    return x < y;
  });
  return c;
}

struct SearchNode {
  int parent;
  int target;  // g2 id or NodeMapping::kDeleted
  int g;
};

// Fills m (g1 id -> target) and pre (g2 id -> g1 id) for the partial mapping
// ending at arena[idx]; undecided slots hold kUndecided.
int rebuild_state(const SearchCtx& c, const std::vector<SearchNode>& arena, int idx,
                  std::vector<int>& m, std::vector<int>& pre) {
  std::fill(m.begin(), m.end(), kUndecided);
  std::fill(pre.begin(), pre.end(), kUndecided);
  int depth = 0;
  for (int cur = idx; arena[static_cast<size_t>(cur)].parent >= 0;
       cur = arena[static_cast<size_t>(cur)].parent)
    ++depth;
  int d = depth;
  for (int cur = idx; arena[static_cast<size_t>(cur)].parent >= 0;
       cur = arena[static_cast<size_t>(cur)].parent) {
    --d;
    int i = c.order[static_cast<size_t>(d)];
    int t = arena[static_cast<size_t>(cur)].target;
    m[static_cast<size_t>(i)] = t;
    if (t != NodeMapping::kDeleted) pre[static_cast<size_t>(t)] = i;
  }
  return depth;
}

// Edit cost added by deciding i -> j on top of the partial mapping in m/pre.
int decide_delta(const SearchCtx& c, const std::vector<int>& m, const std::vector<int>& pre,
                 int i, int j) {
  int delta = 0;
  if (j == NodeMapping::kDeleted) {
    delta += 1;
    for (int p : c.g1->neighbors(i))
      if (m[static_cast<size_t>(p)] != kUndecided) delta += 1;
  } else {
    if (c.lab1[static_cast<size_t>(i)] != c.lab2[static_cast<size_t>(j)]) delta += 1;
    for (int p : c.g1->neighbors(i)) {
      int mp = m[static_cast<size_t>(p)];
      if (mp == kUndecided) continue;
      if (mp == NodeMapping::kDeleted || !c.g2->has_edge(j, mp)) delta += 1;
    }
    for (int q : c.g2->neighbors(j)) {
      int p = pre[static_cast<size_t>(q)];
      if (p == kUndecided) continue;
      if (!c.g1->has_edge(i, p)) delta += 1;
    }
  }
  return delta;
}

// Cost of finishing a complete-depth state: insert every unused g2 node and
// every g2 edge touching one.
int completion_cost(const SearchCtx& c, const std::vector<int>& pre) {
  int cost = 0;
  for (int j = 0; j < c.n2; ++j)
    if (pre[static_cast<size_t>(j)] == kUndecided) ++cost;
  for (auto [x, y] : c.g2->edges())
    if (pre[static_cast<size_t>(x)] == kUndecided || pre[static_cast<size_t>(y)] == kUndecided)
      ++cost;
  return cost;
}

struct RemainingCounts {
  std::vector<int> c1, c2;
  int r1 = 0, r2 = 0;
};

RemainingCounts remaining_counts(const SearchCtx& c, const std::vector<int>& m,
                                 const std::vector<int>& pre) {
  RemainingCounts rc;
  rc.c1.assign(static_cast<size_t>(c.num_labels), 0);
  rc.c2.assign(static_cast<size_t>(c.num_labels), 0);
  for (int i = 0; i < c.n1; ++i)
    if (m[static_cast<size_t>(i)] == kUndecided) {
      ++rc.c1[static_cast<size_t>(c.lab1[static_cast<size_t>(i)])];
      ++rc.r1;
    }
  for (int j = 0; j < c.n2; ++j)
    if (pre[static_cast<size_t>(j)] == kUndecided) {
      ++rc.c2[static_cast<size_t>(c.lab2[static_cast<size_t>(j)])];
      ++rc.r2;
    }
  return rc;
}

// Label-multiset heuristic after additionally deciding i -> j.
int heuristic_after(const SearchCtx& c, const RemainingCounts& rc, int i, int j) {
  int la = c.lab1[static_cast<size_t>(i)];
  int lb = j == NodeMapping::kDeleted ? -1 : c.lab2[static_cast<size_t>(j)];
  int r1 = rc.r1 - 1;
  int r2 = j == NodeMapping::kDeleted ? rc.r2 : rc.r2 - 1;
  int matched = 0;
  for (int l = 0; l < c.num_labels; ++l) {
    int a = rc.c1[static_cast<size_t>(l)] - (l == la ? 1 : 0);
    int b = rc.c2[static_cast<size_t>(l)] - (l == lb ? 1 : 0);
    matched += std::min(a, b);
  }
  return std::max(r1, r2) - matched;
}

NodeMapping extract_mapping(const SearchCtx& c, const std::vector<SearchNode>& arena, int idx) {
  std::vector<int> m(static_cast<size_t>(c.n1), kUndecided);
  std::vector<int> pre(static_cast<size_t>(c.n2), kUndecided);
  rebuild_state(c, arena, idx, m, pre);
  NodeMapping out;
  out.to_g2 = std::move(m);
  return out;
}

struct SearchOutcome {
  int value;
  NodeMapping mapping;
};

SearchOutcome astar_search(const SearchCtx& c, long long expansion_limit) {
  struct PqEntry {
    int f;
    int depth;
    long long seq;
    int node;
  };
  auto worse = [](const PqEntry& a, const PqEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  };
  std::priority_queue<PqEntry, std::vector<PqEntry>, decltype(worse)> pq(worse);
  std::vector<SearchNode> arena;
  arena.push_back({-1, kUndecided, 0});

  std::vector<int> m(static_cast<size_t>(c.n1)), pre(static_cast<size_t>(c.n2));
  long long seq = 0;
  {
    std::fill(m.begin(), m.end(), kUndecided);
    std::fill(pre.begin(), pre.end(), kUndecided);
    RemainingCounts rc = remaining_counts(c, m, pre);
    int matched = 0;
    for (int l = 0; l < c.num_labels; ++l)
      matched += std::min(rc.c1[static_cast<size_t>(l)], rc.c2[static_cast<size_t>(l)]);
    pq.push({std::max(rc.r1, rc.r2) - matched, 0, seq++, 0});
  }

  long long expansions = 0;
  while (!pq.empty()) {
    PqEntry top = pq.top();
    pq.pop();
    int depth = rebuild_state(c, arena, top.node, m, pre);
    if (depth == c.n1) return {arena[static_cast<size_t>(top.node)].g, extract_mapping(c, arena, top.node)};
    if (++expansions > expansion_limit) throw_resource("astar: expansion limit exceeded");

    int i = c.order[static_cast<size_t>(depth)];
    int g = arena[static_cast<size_t>(top.node)].g;
    RemainingCounts rc = remaining_counts(c, m, pre);
    auto emit = [&](int j) {
      int g_child = g + decide_delta(c, m, pre, i, j);
      int f;
      if (depth + 1 == c.n1) {
        if (j != NodeMapping::kDeleted) pre[static_cast<size_t>(j)] = i;
        g_child += completion_cost(c, pre);
        if (j != NodeMapping::kDeleted) pre[static_cast<size_t>(j)] = kUndecided;
        f = g_child;
      } else {
        f = g_child + heuristic_after(c, rc, i, j);
      }
      arena.push_back({top.node, j, g_child});
      pq.push({f, depth + 1, seq++, static_cast<int>(arena.size()) - 1});
    };
    for (int j = 0; j < c.n2; ++j)
      if (pre[static_cast<size_t>(j)] == kUndecided) emit(j);
    emit(NodeMapping::kDeleted);
  }
  throw_numeric("astar: search space exhausted without a goal");
}

SearchOutcome beam_search(const SearchCtx& c, int width) {
  struct LevelEntry {
    int f;
    int g;
    int tie;  // target id, deletions last
    long long seq;
    int node;
  };
  std::vector<SearchNode> arena;
  arena.push_back({-1, kUndecided, 0});
  std::vector<LevelEntry> frontier{{0, 0, 0, 0, 0}}, next;
  std::vector<int> m(static_cast<size_t>(c.n1)), pre(static_cast<size_t>(c.n2));
  long long seq = 1;

  for (int depth = 0; depth < c.n1; ++depth) {
    next.clear();
    int i = c.order[static_cast<size_t>(depth)];
    for (const LevelEntry& entry : frontier) {
      rebuild_state(c, arena, entry.node, m, pre);
      RemainingCounts rc = remaining_counts(c, m, pre);
      auto emit = [&](int j) {
        int g_child = arena[static_cast<size_t>(entry.node)].g + decide_delta(c, m, pre, i, j);
        int f;
        if (depth + 1 == c.n1) {
          if (j != NodeMapping::kDeleted) pre[static_cast<size_t>(j)] = i;
          g_child += completion_cost(c, pre);
          if (j != NodeMapping::kDeleted) pre[static_cast<size_t>(j)] = kUndecided;
          f = g_child;
        } else {
          f = g_child + heuristic_after(c, rc, i, j);
        }
        arena.push_back({entry.node, j, g_child});
        next.push_back({f, g_child, j == NodeMapping::kDeleted ? c.n2 : j, seq++,
                        static_cast<int>(arena.size()) - 1});
      };
      for (int j = 0; j < c.n2; ++j)
        if (pre[static_cast<size_t>(j)] == kUndecided) emit(j);
      emit(NodeMapping::kDeleted);
    }
    auto better = [](const LevelEntry& a, const LevelEntry& b) {
      if (a.f != b.f) return a.f < b.f;
      if (a.g != b.g) return a.g < b.g;
      if (a.tie != b.tie) return a.tie < b.tie;
      return a.seq < b.seq;
    };
    if (width < static_cast<int>(next.size())) {
      std::partial_sort(next.begin(), next.begin() + width, next.end(), better);
      next.resize(static_cast<size_t>(width));
    }
    frontier.swap(next);
  }

  const LevelEntry* best = &frontier.front();
  for (const LevelEntry& entry : frontier)
    if (entry.g < best->g || (entry.g == best->g && entry.seq < best->seq)) best = &entry;
  return {best->g, extract_mapping(c, arena, best->node)};
}

}  // namespace

GedResult ged_exact_astar(const LabeledGraph& g1, const LabeledGraph& g2, int node_limit,
                          long long expansion_limit) {
  if (node_limit < 1) throw_config("astar: node limit must be positive");
  if (expansion_limit < 1) throw_config("astar: expansion limit must be positive");
  if (g1.num_nodes() > node_limit || g2.num_nodes() > node_limit)
    throw_validation("astar: graph exceeds the exact-solver node limit of " +
                     std::to_string(node_limit) + " nodes, use an approximate solver");
  SearchCtx c = make_ctx(g1, g2);
  SearchOutcome out = astar_search(c, expansion_limit);
  GedResult r;
  r.value = out.value;
  r.bound = GedBound::exact;
  r.solver = GedSolver::astar;
  r.path = build_edit_path(g1, g2, out.mapping);
  return r;
}

GedResult ged_beam(const LabeledGraph& g1, const LabeledGraph& g2, int width) {
  if (width < 1) throw_validation("beam: width must be at least 1");
  SearchCtx fwd = make_ctx(g1, g2);
  SearchCtx rev = make_ctx(g2, g1);
  SearchOutcome a = beam_search(fwd, width);
  SearchOutcome b = beam_search(rev, width);
  GedResult r;
  r.bound = GedBound::upper;
  r.solver = GedSolver::beam;
  r.beam_width = width;
  if (a.value <= b.value) {
    r.value = a.value;
    r.path = build_edit_path(g1, g2, a.mapping);
  } else {
    r.value = b.value;
    r.path = build_edit_path(g1, g2, b.mapping.inverted(g1.num_nodes()));
  }
  return r;
}

}  // namespace gedembed
