#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "gedembed/dataset_io.hpp"
#include "gedembed/errors.hpp"
#include "gedembed/graph.hpp"
#include "gedembed/synth.hpp"

using namespace gedembed;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/gedembed_test_") + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

LabeledGraph triangle() {
  return LabeledGraph(0, {"A", "A", "A"}, {{0, 1}, {1, 2}, {0, 2}});
}

std::multiset<std::string> label_multiset(const LabeledGraph& g) {
  return {g.labels().begin(), g.labels().end()};
}

std::multiset<int> degree_multiset(const LabeledGraph& g) {
  std::multiset<int> out;
  for (int i = 0; i < g.num_nodes(); ++i) out.insert(g.degree(i));
  return out;
}

}  // namespace

TEST_CASE("graph construction validates its invariants") {
  CHECK_THROWS_AS(LabeledGraph(-1, {"A"}, {}), Error);
  CHECK_THROWS_AS(LabeledGraph(0, {}, {}), Error);
  CHECK_THROWS_AS(LabeledGraph(0, {"A", "B"}, {{0, 0}}), Error);
  CHECK_THROWS_AS(LabeledGraph(0, {"A", "B"}, {{0, 2}}), Error);
  CHECK_THROWS_AS(LabeledGraph(0, {"A", "B"}, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("edges are canonicalized and queryable") {
  LabeledGraph g(3, {"A", "B", "C"}, {{2, 0}, {1, 2}});
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.degree(2) == 2);
  CHECK(g.degree(1) == 1);
  Tensor adj = g.adjacency_matrix();
  CHECK(adj.at(0, 2) == 1.0);
  CHECK(adj.at(2, 0) == 1.0);
  CHECK(adj.at(0, 1) == 0.0);
  CHECK(adj.at(0, 0) == 0.0);
}

TEST_CASE("minimal single-node record parses") {
  std::string path = temp_path("minimal.jsonl");
  {
    std::ofstream out(path);
    out << R"({"gid":0,"nodes":[{"id":0,"label":"C"}],"edges":[]})" << "\n";
  }
  Dataset ds = load_dataset(path);
  REQUIRE(ds.size() == 1);
  CHECK(ds.graphs[0].num_nodes() == 1);
  CHECK(ds.graphs[0].num_edges() == 0);
  CHECK(ds.graphs[0].label(0) == "C");
  CHECK_FALSE(ds.graphs[0].glabel().has_value());
  std::remove(path.c_str());
}

TEST_CASE("self loop in a record is a validation error naming the line") {
  std::string path = temp_path("selfloop.jsonl");
  {
    std::ofstream out(path);
    out << R"({"gid":0,"nodes":[{"id":0,"label":"C"}],"edges":[]})" << "\n";
    out << R"({"gid":1,"nodes":[{"id":0,"label":"C"},{"id":1,"label":"C"}],"edges":[[0,0]]})"
        << "\n";
  }
  try {
    load_dataset(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::validation);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("malformed json is a parse error naming the line") {
  std::string path = temp_path("badjson.jsonl");
  {
    std::ofstream out(path);
    out << "{not json\n";
  }
  try {
    load_dataset(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::parse);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("duplicate gid is a validation error") {
  std::string path = temp_path("dupgid.jsonl");
  {
    std::ofstream out(path);
    out << R"({"gid":5,"nodes":[{"id":0,"label":"A"}],"edges":[]})" << "\n";
    out << R"({"gid":5,"nodes":[{"id":0,"label":"B"}],"edges":[]})" << "\n";
  }
  CHECK_THROWS_AS(load_dataset(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("edge referencing an unknown node id is rejected") {
  CHECK_THROWS_AS(
      graph_from_json_line(R"({"gid":0,"nodes":[{"id":0,"label":"A"}],"edges":[[0,3]]})", 1),
      Error);
}

TEST_CASE("file node ids are canonicalized in node-list order") {
  LabeledGraph g = graph_from_json_line(
      R"({"gid":2,"nodes":[{"id":10,"label":"X"},{"id":7,"label":"Y"}],"edges":[[10,7]],"glabel":"f"})",
      1);
  CHECK(g.label(0) == "X");
  CHECK(g.label(1) == "Y");
  CHECK(g.has_edge(0, 1));
  CHECK(g.glabel() == "f");
}

TEST_CASE("save then load is the identity and emission is canonical") {
  Dataset ds;
  ds.graphs.push_back(triangle());
  ds.graphs.push_back(LabeledGraph(1, {"A", "B", "C"}, {{0, 1}, {1, 2}}, "path"));
  ds.graphs.push_back(LabeledGraph(2, {"H", "H", "H", "H"}, {{0, 1}, {0, 2}, {0, 3}}, "star"));

  std::string path = temp_path("roundtrip.jsonl");
  save_dataset(ds, path);
  Dataset back = load_dataset(path);
  REQUIRE(back.size() == 3);
  CHECK(back.graphs[0].edges() == ds.graphs[0].edges());
  CHECK(back.graphs[1].labels() == ds.graphs[1].labels());
  CHECK(back.graphs[2].glabel() == ds.graphs[2].glabel());

  std::string again = temp_path("roundtrip2.jsonl");
  save_dataset(back, again);
  CHECK(read_file(path) == read_file(again));
  std::remove(path.c_str());
  std::remove(again.c_str());

  CHECK(graph_to_json_line(LabeledGraph(0, {"C"}, {})) ==
        R"({"gid":0,"nodes":[{"id":0,"label":"C"}],"edges":[],"glabel":null})");
}

TEST_CASE("split sizes follow the remainder-to-train rule") {
  auto make = [](int n) {
    Dataset ds;
    for (int i = 0; i < n; ++i) ds.graphs.push_back(LabeledGraph(i, {"A"}, {}));
    return ds;
  };
  SplitSpec spec;
  spec.seed = 7;
  DatasetSplits s10 = split_dataset(make(10), spec);
  CHECK(s10.train.size() == 6);
  CHECK(s10.val.size() == 2);
  CHECK(s10.test.size() == 2);

  DatasetSplits s11 = split_dataset(make(11), spec);
  CHECK(s11.train.size() == 7);
  CHECK(s11.val.size() == 2);
  CHECK(s11.test.size() == 2);
}

TEST_CASE("split is a deterministic partition") {
  Dataset ds;
  for (int i = 0; i < 23; ++i) ds.graphs.push_back(LabeledGraph(i, {"A"}, {}));
  SplitSpec spec;
  spec.seed = 3;
  DatasetSplits a = split_dataset(ds, spec);
  DatasetSplits b = split_dataset(ds, spec);

  auto gids = [](const Dataset& d) {
    std::set<int> out;
    for (const auto& g : d.graphs) out.insert(g.gid());
    return out;
  };
  CHECK(gids(a.train) == gids(b.train));
  CHECK(gids(a.val) == gids(b.val));
  CHECK(gids(a.test) == gids(b.test));

  std::set<int> all;
  for (const auto* part : {&a.train, &a.val, &a.test})
    for (const auto& g : part->graphs) CHECK(all.insert(g.gid()).second);
  CHECK(all.size() == 23);
}

TEST_CASE("bad split ratios are a config error") {
  Dataset ds;
  for (int i = 0; i < 10; ++i) ds.graphs.push_back(LabeledGraph(i, {"A"}, {}));
  SplitSpec spec;
  spec.train = 0.5;
  CHECK_THROWS_AS(split_dataset(ds, spec), Error);
}

TEST_CASE("vocab is sorted with a reserved unseen index") {
  Dataset ds;
  ds.graphs.push_back(LabeledGraph(0, {"O", "C"}, {{0, 1}}));
  ds.graphs.push_back(LabeledGraph(1, {"N", "C"}, {{0, 1}}));
  LabelVocab vocab = build_label_vocab(ds);
  CHECK(vocab.labels == std::vector<std::string>{"C", "N", "O"});
  CHECK(vocab.oov_index() == 3);
  CHECK(vocab.onehot_width() == 4);
  CHECK(vocab.index_of("N") == 1);
  CHECK(vocab.index_of("S") == 3);

  Dataset single;
  single.graphs.push_back(LabeledGraph(0, {"A", "A"}, {{0, 1}}));
  CHECK(build_label_vocab(single).onehot_width() == 2);
}

TEST_CASE("features are one-hot rows or a constant column") {
  LabelVocab vocab{{"C", "N", "O"}};
  LabeledGraph g(0, {"C", "N"}, {{0, 1}});
  Tensor f = encode_features(g, &vocab);
  REQUIRE(f.rows == 2);
  REQUIRE(f.cols == 4);
  CHECK(f.data == std::vector<double>{1, 0, 0, 0, 0, 1, 0, 0});

  LabeledGraph unseen(1, {"S"}, {});
  Tensor fo = encode_features(unseen, &vocab);
  CHECK(fo.data == std::vector<double>{0, 0, 0, 1});

  LabeledGraph plain(2, {"", "", ""}, {{0, 1}});
  Tensor fu = encode_features(plain, nullptr);
  REQUIRE(fu.rows == 3);
  REQUIRE(fu.cols == 1);
  CHECK(fu.data == std::vector<double>{1, 1, 1});
}

TEST_CASE("one-hot rows sum to one") {
  LabelVocab vocab{{"A", "B"}};
  LabeledGraph g(0, {"B", "A", "Q"}, {});
  Tensor f = encode_features(g, &vocab);
  for (int r = 0; r < f.rows; ++r) {
    double sum = 0;
    int ones = 0;
    for (int c = 0; c < f.cols; ++c) {
      sum += f.at(r, c);
      if (f.at(r, c) == 1.0) ++ones;
    }
    CHECK(sum == 1.0);
    CHECK(ones == 1);
  }
}

TEST_CASE("permute_nodes relabels ids and preserves structure") {
  LabeledGraph tri = triangle();
  LabeledGraph same = permute_nodes(tri, {0, 1, 2});
  CHECK(same.edges() == tri.edges());

  LabeledGraph g(0, {"A", "B", "C"}, {{0, 1}, {1, 2}});
  LabeledGraph p = permute_nodes(g, {2, 0, 1});
  CHECK(p.num_nodes() == 3);
  CHECK(p.num_edges() == 2);
  CHECK(p.label(2) == "A");
  CHECK(p.label(0) == "B");
  CHECK(p.has_edge(2, 0));
  CHECK(p.has_edge(0, 1));
  CHECK(label_multiset(p) == label_multiset(g));
  CHECK(degree_multiset(p) == degree_multiset(g));

  LabeledGraph back = permute_nodes(p, {1, 2, 0});
  CHECK(back.labels() == g.labels());
  CHECK(back.edges() == g.edges());

  LabeledGraph rolled = permute_nodes(tri, {2, 0, 1});
  CHECK(rolled.num_edges() == 3);
  CHECK(label_multiset(rolled) == label_multiset(tri));

  CHECK_THROWS_AS(permute_nodes(g, {0, 0, 1}), Error);
  CHECK_THROWS_AS(permute_nodes(g, {0, 1}), Error);
}

TEST_CASE("synthetic families have their defining shapes") {
  Rng rng(0);
  LabeledGraph cyc = synth_graph(GraphFamily::cycle, 0, 3, {"A"}, 0.5, rng);
  CHECK(cyc.num_nodes() == 3);
  CHECK(cyc.num_edges() == 3);

  LabeledGraph path = synth_graph(GraphFamily::path, 1, 3, {"A"}, 0.5, rng);
  CHECK(path.num_edges() == 2);

  LabeledGraph star = synth_graph(GraphFamily::star, 2, 5, {"A"}, 0.5, rng);
  CHECK(star.num_edges() == 4);
  CHECK(star.degree(0) == 4);

  LabeledGraph comp = synth_graph(GraphFamily::complete, 3, 4, {"A"}, 0.5, rng);
  CHECK(comp.num_edges() == 6);

  LabeledGraph tree = synth_graph(GraphFamily::random_tree, 4, 6, {"A"}, 0.5, rng);
  CHECK(tree.num_edges() == 5);
}

TEST_CASE("synthesis is deterministic per seed") {
  FamilySpec spec;
  spec.family = GraphFamily::erdos_renyi;
  spec.count = 20;
  spec.min_size = 5;
  spec.max_size = 8;
  spec.er_p = 0.5;
  spec.alphabet = {"A", "B"};
  Dataset a = synth_generate({spec}, 1);
  Dataset b = synth_generate({spec}, 1);
  REQUIRE(a.size() == 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(a.graphs[static_cast<size_t>(i)].labels() == b.graphs[static_cast<size_t>(i)].labels());
    CHECK(a.graphs[static_cast<size_t>(i)].edges() == b.graphs[static_cast<size_t>(i)].edges());
    CHECK(a.graphs[static_cast<size_t>(i)].glabel() == std::optional<std::string>("erdos_renyi"));
  }
  Dataset c = synth_generate({spec}, 2);
  bool any_difference = false;
  for (int i = 0; i < 20; ++i)
    if (a.graphs[static_cast<size_t>(i)].edges() != c.graphs[static_cast<size_t>(i)].edges() ||
        a.graphs[static_cast<size_t>(i)].labels() != c.graphs[static_cast<size_t>(i)].labels())
      any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("family spec grammar accepts plurals and probabilities") {
  FamilySpec s = parse_family_spec("cycles:20:5..8");
  CHECK(s.family == GraphFamily::cycle);
  CHECK(s.count == 20);
  CHECK(s.min_size == 5);
  CHECK(s.max_size == 8);

  FamilySpec er = parse_family_spec("erdos_renyi(0.3):5:4");
  CHECK(er.family == GraphFamily::erdos_renyi);
  CHECK(er.er_p == doctest::Approx(0.3));
  CHECK(er.min_size == 4);
  CHECK(er.max_size == 4);

  CHECK_THROWS_AS(parse_family_spec("nonsense:3:4"), Error);
  CHECK_THROWS_AS(parse_family_spec("path:0:4"), Error);
  CHECK_THROWS_AS(parse_family_spec("path:3"), Error);
  CHECK_THROWS_AS(synth_generate({}, 0), Error);
}
