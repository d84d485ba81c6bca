#pragma once

#include <string>

#include "gedembed/graph.hpp"

namespace gedembed {

// Graph record JSONL, one graph per line:
//   {"gid":0,"nodes":[{"id":0,"label":"C"}],"edges":[[0,1]],"glabel":"x"}
// Node ids may be arbitrary in the file; they are canonicalized to 0..N-1 in
// node-list order at load. Files are UTF-8 with LF line endings.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);

// Single-record (de)serialization, shared by file IO and tests.
std::string graph_to_json_line(const LabeledGraph& g);
LabeledGraph graph_from_json_line(const std::string& line, int line_number);

}  // namespace gedembed
