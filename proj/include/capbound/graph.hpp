#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capbound {

class Graph;

// Subset of the vertices of one particular graph, as a bit mask.
// Everything here is desk-scale (n <= 64), so a single word suffices.
struct VertexSet {
  std::uint64_t bits = 0;
  int n = 0;  // vertex count of the bound graph

  VertexSet() = default;
  VertexSet(std::uint64_t b, int n_) : bits(b), n(n_) {
    if (n_ < 0 || n_ > 64) throw std::invalid_argument("VertexSet: bad n");
    if (n_ < 64 && (b >> n_) != 0)
      throw std::invalid_argument("VertexSet: member out of range");
  }
  static VertexSet of(std::initializer_list<int> vs, int n) {
    std::uint64_t b = 0;
    for (int v : vs) {
      if (v < 0 || v >= n) throw std::invalid_argument("VertexSet: member out of range");
      b |= (std::uint64_t{1} << v);
    }
    return VertexSet(b, n);
  }
  static VertexSet full(int n) {
    if (n <= 0 || n > 64) throw std::invalid_argument("VertexSet: bad n");
    std::uint64_t b = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return VertexSet(b, n);
  }

  bool contains(int v) const { return v >= 0 && v < n && (bits >> v) & 1; }
  int size() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }
  VertexSet with(int v) const {
    if (v < 0 || v >= n) throw std::invalid_argument("VertexSet: member out of range");
    return VertexSet(bits | (std::uint64_t{1} << v), n);
  }
  VertexSet without(int v) const {
    return VertexSet(bits & ~(std::uint64_t{1} << v), n);
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }
  bool operator==(const VertexSet& o) const { return bits == o.bits && n == o.n; }
};

// Immutable simple undirected graph on up to 64 vertices with optional
// per-vertex labels. Adjacency is a row of bit masks; symmetry and a zero
// diagonal are enforced at construction.
class Graph {
 public:
  explicit Graph(int n, const std::vector<std::pair<int, int>>& edges = {},
                 std::vector<std::string> labels = {})
      : n_(n), adj_(static_cast<std::size_t>(n), 0), labels_(std::move(labels)) {
    if (n < 1 || n > 64) throw std::invalid_argument("Graph: n must be in [1,64]");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
      throw std::invalid_argument("Graph: label count mismatch");
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (u == v) throw std::invalid_argument("Graph: self-loop");
      adj_[u] |= std::uint64_t{1} << v;
      adj_[v] |= std::uint64_t{1} << u;
    }
  }

  int n() const { return n_; }
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1; }
  std::uint64_t neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return std::popcount(adj_[v]); }
  VertexSet vertices() const { return VertexSet::full(n_); }

  int edge_count() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m += degree(v);
    return m / 2;
  }

  // Edges (u,v) with u < v in ascending lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n_; ++u)
      for (std::uint64_t b = adj_[u] >> (u + 1) << (u + 1); b; b &= b - 1)
        es.emplace_back(u, std::countr_zero(b));
    return es;
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int v) const {
    static const std::string empty;
    return has_labels() ? labels_[v] : empty;
  }
  const std::vector<std::string>& labels() const { return labels_; }

  // Index of the vertex carrying a given label; -1 if absent.
  int vertex_by_label(const std::string& s) const {
    for (int v = 0; v < n_; ++v)
      if (has_labels() && labels_[v] == s) return v;
    return -1;
  }

  Graph with_labels(std::vector<std::string> labels) const {
    Graph g = *this;
    if (static_cast<int>(labels.size()) != n_)
      throw std::invalid_argument("Graph: label count mismatch");
    g.labels_ = std::move(labels);
    return g;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  // Adjacency bits packed row by row (upper triangle), as a memoization key.
  std::string adjacency_key() const {
    std::string key;
    key.reserve(2 + static_cast<std::size_t>(n_) * (n_ - 1) / 2 / 8 + 1);
    key.push_back(static_cast<char>(n_));
    unsigned acc = 0;
    int fill = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) {
        acc = (acc << 1) | (adjacent(u, v) ? 1u : 0u);
        if (++fill == 8) {
          key.push_back(static_cast<char>(acc));
          acc = 0;
          fill = 0;
        }
      }
    if (fill) key.push_back(static_cast<char>(acc << (8 - fill)));
    return key;
  }

 private:
  int n_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::string> labels_;
};

inline Graph empty_graph(int n) { return Graph(n); }

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph(n, es);
}

inline Graph cycle(int n) {
  if (n < 3) throw std::domain_error("cycle: need n >= 3");
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

// Complement of the Schlaefli graph via the 27-lines model: vertices
// a_1..a_6, b_1..b_6, c_{ij} (i<j). Two lines are adjacent iff they meet:
// a_i ~ b_j (i != j); a_i, b_i ~ c_{jk} iff i in {j,k}; c_{ij} ~ c_{kl}
// iff the index pairs are disjoint. This is the SRG(27,10,1,5).
inline Graph schlafli_complement() {
  std::vector<std::string> labels;
  std::vector<std::array<int, 2>> cpair;  // index pairs for c vertices
  for (int i = 1; i <= 6; ++i) labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= 6; ++i) labels.push_back("b" + std::to_string(i));
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      labels.push_back("c" + std::to_string(i) + std::to_string(j));
      cpair.push_back({i, j});
    }
  auto a = [](int i) { return i - 1; };
  auto b = [](int i) { return 5 + i; };
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j)
      if (i != j && a(i) < b(j)) es.emplace_back(a(i), b(j));
  for (int c = 0; c < 15; ++c) {
    int cv = 12 + c;
    for (int i = 1; i <= 6; ++i)
      if (i == cpair[c][0] || i == cpair[c][1]) {
        es.emplace_back(a(i), cv);
        es.emplace_back(b(i), cv);
      }
  }
  for (int c = 0; c < 15; ++c)
    for (int d = c + 1; d < 15; ++d) {
      bool disjoint = cpair[c][0] != cpair[d][0] && cpair[c][0] != cpair[d][1] &&
                      cpair[c][1] != cpair[d][0] && cpair[c][1] != cpair[d][1];
      if (disjoint) es.emplace_back(12 + c, 12 + d);
    }
  return Graph(27, es, labels);
}

// Strong product with row-major vertex order: (i,j) -> i*n_h + j.
inline Graph strong_product(const Graph& g, const Graph& h) {
  long total = static_cast<long>(g.n()) * h.n();
  if (total > 64) throw std::invalid_argument("strong_product: result exceeds 64 vertices");
  int nh = h.n();
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < g.n(); ++u)
    for (int up = 0; up < nh; ++up)
      for (int v = u; v < g.n(); ++v)
        for (int vp = 0; vp < nh; ++vp) {
          int x = u * nh + up, y = v * nh + vp;
          if (x >= y) continue;
          bool gadj = g.adjacent(u, v), hadj = h.adjacent(up, vp);
          bool geq = (u == v), heq = (up == vp);
          if ((gadj && heq) || (geq && hadj) || (gadj && hadj)) es.emplace_back(x, y);
        }
  return Graph(static_cast<int>(total), es);
}

inline Graph disjoint_union(const Graph& g, const Graph& h) {
  int total = g.n() + h.n();
  if (total > 64) throw std::invalid_argument("disjoint_union: result exceeds 64 vertices");
  std::vector<std::pair<int, int>> es = g.edges();
  for (auto [u, v] : h.edges()) es.emplace_back(u + g.n(), v + g.n());
  std::vector<std::string> labels;
  if (g.has_labels() || h.has_labels()) {
    for (int v = 0; v < g.n(); ++v)
      labels.push_back(g.has_labels() ? g.label(v) : std::to_string(v));
    for (int v = 0; v < h.n(); ++v)
      labels.push_back(h.has_labels() ? h.label(v) : std::to_string(v));
  }
  return Graph(total, es, std::move(labels));
}

// Vertices of s re-indexed in ascending original order; the original
// identity of each vertex is retained in the labels.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.n != g.n()) throw std::invalid_argument("induced_subgraph: set bound to wrong graph");
  if (s.empty()) throw std::invalid_argument("induced_subgraph: empty vertex set");
  std::vector<int> verts = s.members();
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : g.edges())
    if (pos[u] >= 0 && pos[v] >= 0) es.emplace_back(pos[u], pos[v]);
  std::vector<std::string> labels;
  for (int v : verts)
    labels.push_back(g.has_labels() ? g.label(v) : std::to_string(v));
  return Graph(static_cast<int>(verts.size()), es, std::move(labels));
}

// Adds one vertex adjacent exactly to `neighbors`; new vertex gets index n.
inline Graph apex_extension(const Graph& g, const VertexSet& neighbors) {
  if (neighbors.n != g.n())
    throw std::invalid_argument("apex_extension: set bound to wrong graph");
  int total = g.n() + 1;
  if (total > 64) throw std::invalid_argument("apex_extension: result exceeds 64 vertices");
  std::vector<std::pair<int, int>> es = g.edges();
  for (int v : neighbors.members()) es.emplace_back(v, g.n());
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels = g.labels();
    labels.push_back(std::to_string(total));
  }
  return Graph(total, es, std::move(labels));
}

inline Graph complement(const Graph& g) {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.adjacent(u, v)) es.emplace_back(u, v);
  return Graph(g.n(), es, g.labels());
}

inline Graph graph_power(const Graph& g, int k) {
  if (k < 1) throw std::domain_error("graph_power: need k >= 1");
  Graph result = g;
  for (int i = 1; i < k; ++i) result = strong_product(result, g);
  return result;
}

}  // namespace capbound
