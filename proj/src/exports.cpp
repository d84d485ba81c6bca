#include "gedembed/eval/exports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gedembed/errors.hpp"
#include "gedembed/rng.hpp"

namespace gedembed {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_validation("cannot open file for writing: " + path);
  return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw_resource("failed writing file: " + path);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void save_embeddings_csv(const std::vector<GraphEmbedding>& embeddings, const std::string& path) {
  if (embeddings.empty()) throw_validation("save_embeddings_csv: no embeddings");
  int d = embeddings.front().dim();
  for (const GraphEmbedding& e : embeddings)
    if (e.dim() != d) throw_validation("save_embeddings_csv: inconsistent embedding dims");
  std::ofstream out = open_out(path);
  out << "gid";
  for (int c = 0; c < d; ++c) out << ",e" << c;
  out << "\n";
  for (const GraphEmbedding& e : embeddings) {
    out << e.gid;
    for (double v : e.h) out << ',' << fmt9(v);
    out << "\n";
  }
  finish_out(out, path);
}

std::vector<GraphEmbedding> load_embeddings_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot open embeddings file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw_parse(path + ": empty file");
  std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "gid")
    throw_parse(path + " line 1: expected header gid,e0,...");
  for (size_t c = 1; c < header.size(); ++c)
    if (header[c] != "e" + std::to_string(c - 1))
      throw_parse(path + " line 1: unexpected column '" + header[c] + "'");
  size_t d = header.size() - 1;
  std::vector<GraphEmbedding> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != d + 1)
      throw_parse(path + " line " + std::to_string(line_no) + ": expected " +
                  std::to_string(d + 1) + " fields");
    GraphEmbedding e;
    try {
      e.gid = std::stoi(fields[0]);
      for (size_t c = 1; c < fields.size(); ++c) e.h.push_back(std::stod(fields[c]));
    } catch (const std::exception&) {
      throw_parse(path + " line " + std::to_string(line_no) + ": malformed number");
    }
    out.push_back(std::move(e));
  }
  return out;
}

void save_rankings_csv(const std::vector<Ranking>& rankings, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "query_gid,rank,gid,score\n";
  for (const Ranking& r : rankings)
    for (size_t i = 0; i < r.items.size(); ++i)
      out << r.query_gid << ',' << (i + 1) << ',' << r.items[i].gid << ','
          << fmt9(r.items[i].score) << "\n";
  finish_out(out, path);
}

void save_projection_csv(const std::vector<ProjectedPoint>& points, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "gid,x,y\n";
  for (const ProjectedPoint& p : points)
    out << p.gid << ',' << fmt9(p.x) << ',' << fmt9(p.y) << "\n";
  finish_out(out, path);
}

void save_projection_svg(const std::vector<ProjectedPoint>& points, const std::string& path) {
  const double size = 800.0, margin = 40.0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  if (!points.empty()) {
    xmin = xmax = points.front().x;
    ymin = ymax = points.front().y;
    for (const ProjectedPoint& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  double scale = span > 0.0 ? (size - 2.0 * margin) / span : 0.0;
  double cx = (xmin + xmax) / 2.0, cy = (ymin + ymax) / 2.0;

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const ProjectedPoint& p : points) {
    double px = size / 2.0 + (p.x - cx) * scale;
    double py = size / 2.0 - (p.y - cy) * scale;
    std::string fill = "#888888";
    if (p.glabel) {
      unsigned hue = static_cast<unsigned>(derive_seed(0, *p.glabel) % 360);
      fill = "hsl(" + std::to_string(hue) + ",70%,45%)";
    }
    out << "<circle cx=\"" << fmt9(px) << "\" cy=\"" << fmt9(py)
        << "\" r=\"6\" fill=\"" << fill << "\" stroke=\"#333333\" stroke-width=\"1\"><title>gid "
        << p.gid;
    if (p.glabel) out << " (" << *p.glabel << ")";
    out << "</title></circle>\n";
  }
  out << "</svg>\n";
  finish_out(out, path);
}

}  // namespace gedembed
