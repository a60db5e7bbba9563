#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "capbound/graph.hpp"

namespace capbound {

// Canonical text form: first line "n m", then m lines "u v" (0-based,
// u < v, ascending lexicographic), then optional "# label i name" lines.
inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  auto es = g.edges();
  out << g.n() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) out << u << ' ' << v << '\n';
  if (g.has_labels())
    for (int v = 0; v < g.n(); ++v)
      out << "# label " << v << ' ' << g.label(v) << '\n';
  return out.str();
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("graph file: empty");
  int n = 0, m = 0;
  {
    std::istringstream head(line);
    if (!(head >> n >> m)) throw std::invalid_argument("graph file: bad header");
  }
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("graph file: truncated edge list");
    std::istringstream row(line);
    int u, v;
    if (!(row >> u >> v)) throw std::invalid_argument("graph file: bad edge line");
    es.emplace_back(u, v);
  }
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string hash, kw;
    int idx;
    std::string name;
    if (!(row >> hash >> kw >> idx) || hash != "#" || kw != "label")
      throw std::invalid_argument("graph file: bad trailer line: " + line);
    row >> std::ws;
    std::getline(row, name);
    if (labels.empty()) labels.assign(n, "");
    if (idx < 0 || idx >= n) throw std::invalid_argument("graph file: label index out of range");
    labels[idx] = name;
  }
  return Graph(n, es, std::move(labels));
}

inline Graph load_graph(const std::string& filepath) {
  std::ifstream in(filepath);
  if (!in) throw std::runtime_error("cannot open graph file: " + filepath);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

inline void save_graph(const Graph& g, const std::string& filepath) {
  std::ofstream out(filepath);
  if (!out) throw std::runtime_error("cannot write graph file: " + filepath);
  out << serialize_graph(g);
}

}  // namespace capbound
