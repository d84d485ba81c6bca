#include "gedembed/dataset_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "gedembed/errors.hpp"

namespace gedembed {

using nlohmann::json;

LabeledGraph graph_from_json_line(const std::string& line, int line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw_parse("line " + std::to_string(line_number) + ": " + e.what());
  }
  auto fail = [line_number](const std::string& msg) -> void {
    throw_parse("line " + std::to_string(line_number) + ": " + msg);
  };
  if (!j.is_object()) fail("record must be a JSON object");
  if (!j.contains("gid") || !j["gid"].is_number_integer()) fail("missing integer field 'gid'");
  if (!j.contains("nodes") || !j["nodes"].is_array()) fail("missing array field 'nodes'");
  if (!j.contains("edges") || !j["edges"].is_array()) fail("missing array field 'edges'");

  int gid = j["gid"].get<int>();
  std::vector<std::string> labels;
  std::unordered_map<int, int> id_map;  // file id -> canonical 0..N-1
  for (const auto& node : j["nodes"]) {
    if (!node.is_object() || !node.contains("id") || !node["id"].is_number_integer() ||
        !node.contains("label") || !node["label"].is_string())
      fail("each node needs an integer 'id' and string 'label'");
    int file_id = node["id"].get<int>();
    if (!id_map.emplace(file_id, static_cast<int>(labels.size())).second)
      fail("duplicate node id " + std::to_string(file_id));
    labels.push_back(node["label"].get<std::string>());
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail("each edge must be a [u,v] integer pair");
    auto u = id_map.find(e[0].get<int>());
    auto v = id_map.find(e[1].get<int>());
    if (u == id_map.end() || v == id_map.end()) fail("edge references unknown node id");
    edges.emplace_back(u->second, v->second);
  }
  std::optional<std::string> glabel;
  if (j.contains("glabel") && !j["glabel"].is_null()) {
    if (!j["glabel"].is_string()) fail("'glabel' must be a string or null");
    glabel = j["glabel"].get<std::string>();
  }
  try {
    return LabeledGraph(gid, std::move(labels), std::move(edges), std::move(glabel));
  } catch (const Error& e) {
    throw Error(e.category(), "line " + std::to_string(line_number) + ": " + e.what());
  }
}

std::string graph_to_json_line(const LabeledGraph& g) {
  std::ostringstream out;
  out << "{\"gid\":" << g.gid() << ",\"nodes\":[";
  for (int i = 0; i < g.num_nodes(); ++i) {
    if (i) out << ",";
    out << "{\"id\":" << i << ",\"label\":" << json(g.label(i)).dump() << "}";
  }
  out << "],\"edges\":[";
  for (size_t i = 0; i < g.edges().size(); ++i) {
    if (i) out << ",";
    out << "[" << g.edges()[i].first << "," << g.edges()[i].second << "]";
  }
  out << "],\"glabel\":";
  out << (g.glabel() ? json(*g.glabel()).dump() : "null");
  out << "}";
  return out.str();
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot open dataset file: " + path);
  Dataset ds;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ds.graphs.push_back(graph_from_json_line(line, line_number));
  }
  ds.validate_unique_gids();
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_validation("cannot write dataset file: " + path);
  for (const auto& g : ds.graphs) out << graph_to_json_line(g) << "\n";
}

}  // namespace gedembed
