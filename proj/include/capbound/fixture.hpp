#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "capbound/graph.hpp"
#include "capbound/minrank.hpp"

namespace capbound {

// True iff g is strongly regular with parameters (v,k,lambda,mu) by
// exhaustive common-neighbor counting.
inline bool is_strongly_regular(const Graph& g, int v, int k, int lambda, int mu) {
  if (g.n() != v) return false;
  for (int i = 0; i < v; ++i)
    if (g.degree(i) != k) return false;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) {
      int common = std::popcount(g.neighbors(i) & g.neighbors(j));
      if (common != (g.adjacent(i, j) ? lambda : mu)) return false;
    }
  return true;
}

// The 28-vertex graph of the worked minrank example: the Schlaefli
// complement on vertices 1..27 plus one apex vertex 28. The exact
// drawing is only pinned down by the constraint lists below, so the
// shipped fixture is reconstructed by search and validated, not trusted.
namespace fixture {

// All vertex numbers here are 1-based paper labels; the apex is 28.
inline constexpr std::array<int, 9> kApexNeighbors = {1, 2, 3, 4, 5, 11, 12, 23, 27};
inline constexpr std::array<int, 7> kMaxIndependentSet = {8, 9, 13, 15, 19, 25, 28};
inline constexpr std::array<int, 10> kNeighborsOf6 = {5, 13, 14, 17, 18, 21, 22, 25, 26, 27};
// the example lists N(17) after 6's deletions; edge {6,17} is restored here
inline constexpr std::array<int, 10> kNeighborsOf17 = {1, 4, 6, 7, 9, 12, 19, 20, 22, 24};
inline constexpr std::array<int, 6> kDeletionW6 = {5, 17, 18, 21, 22, 27};
inline constexpr std::array<int, 5> kDeletionW17 = {1, 4, 12, 22, 24};
inline constexpr std::array<int, 8> kResidualIndependentSet = {6, 12, 15, 16, 17, 18, 24, 27};

inline int index_of_label(int label) { return label - 1; }

inline VertexSet label_set(const std::vector<int>& labels, int n = 28) {
  VertexSet s(0, n);
  for (int l : labels) s = s.with(index_of_label(l));
  return s;
}

// Pairwise adjacency facts over labels 1..27 implied by the example:
// +1 = edge required, -1 = edge forbidden, 0 = unconstrained.
inline std::vector<std::vector<int>> pair_constraints() {
  std::vector<std::vector<int>> c(28, std::vector<int>(28, 0));
  auto set = [&](int a, int b, int v) {
    c[index_of_label(a)][index_of_label(b)] = v;
    c[index_of_label(b)][index_of_label(a)] = v;
  };
  // full neighborhoods of 6 and 17
  for (int x = 1; x <= 27; ++x) {
    if (x != 6) {
      bool adj = false;
      for (int y : kNeighborsOf6) adj |= (y == x);
      set(6, x, adj ? 1 : -1);
    }
    if (x != 17) {
      bool adj = false;
      for (int y : kNeighborsOf17) adj |= (y == x);
      set(17, x, adj ? 1 : -1);
    }
  }
  // the independent set restricted to the 27-part
  for (std::size_t i = 0; i < kMaxIndependentSet.size(); ++i)
    for (std::size_t j = i + 1; j < kMaxIndependentSet.size(); ++j) {
      int a = kMaxIndependentSet[i], b = kMaxIndependentSet[j];
      if (a <= 27 && b <= 27) set(a, b, -1);
    }
  // each deletion witness w avoids J = {13,25} resp. {9,19}
  for (int w : kDeletionW6) {
    set(w, 13, -1);
    set(w, 25, -1);
  }
  for (int w : kDeletionW17) {
    set(w, 9, -1);
    set(w, 19, -1);
  }
  // the residual independent set: edges inside it are exactly the
  // deleted ones, everything else must already be absent
  for (std::size_t i = 0; i < kResidualIndependentSet.size(); ++i)
    for (std::size_t j = i + 1; j < kResidualIndependentSet.size(); ++j) {
      int a = kResidualIndependentSet[i], b = kResidualIndependentSet[j];
      bool deleted = false;
      for (int w : kDeletionW6) deleted |= (a == 6 && b == w) || (b == 6 && a == w);
      for (int w : kDeletionW17) deleted |= (a == 17 && b == w) || (b == 17 && a == w);
      if (!deleted) set(a, b, -1);
    }
  return c;
}

// The 11-edge script of the example, bound to a fixture graph.
inline DeletionScript paper_script(const Graph& g) {
  std::vector<int> ivec(kMaxIndependentSet.begin(), kMaxIndependentSet.end());
  VertexSet I = label_set(ivec, g.n());
  DeletionScript s;
  for (int w : kDeletionW6)
    s.steps.push_back({I, index_of_label(6), index_of_label(w)});
  for (int w : kDeletionW17)
    s.steps.push_back({I, index_of_label(17), index_of_label(w)});
  return s;
}

}  // namespace fixture

struct FixtureReport {
  bool ok = false;
  std::vector<std::string> violations;
};

// Checks every textual constraint of the worked example against g.
// Vertex i is expected to carry paper label i+1, apex last.
inline FixtureReport validate_fixture_report(const Graph& g) {
  namespace fx = fixture;
  FixtureReport rep;
  if (g.n() != 28) {
    rep.violations.push_back("vertex count is not 28");
    return rep;
  }
  auto complain = [&](const std::string& s) { rep.violations.push_back(s); };

  VertexSet part27(0, 28);
  for (int v = 0; v < 27; ++v) part27 = part27.with(v);
  Graph inner = induced_subgraph(g, part27);
  if (!is_strongly_regular(inner, 27, 10, 1, 5))
    complain("27-part is not SRG(27,10,1,5)");

  int apex = 27;
  std::vector<int> an(fx::kApexNeighbors.begin(), fx::kApexNeighbors.end());
  if (!(VertexSet(g.neighbors(apex), 28) ==
        fx::label_set(an)))
    complain("apex neighborhood differs from {1..5,11,12,23,27}");

  std::vector<int> ivec(fx::kMaxIndependentSet.begin(), fx::kMaxIndependentSet.end());
  VertexSet I = fx::label_set(ivec);
  if (!is_independent_set(g, I)) complain("I = {8,9,13,15,19,25,28} is not independent");
  if (independence_number(g) != 7) complain("alpha(G) != 7");

  auto neighbors_match = [&](int label, const auto& expect) {
    std::vector<int> ev(expect.begin(), expect.end());
    return VertexSet(g.neighbors(fx::index_of_label(label)), 28) == fx::label_set(ev);
  };
  if (!neighbors_match(6, fx::kNeighborsOf6)) complain("N(6) differs from the example");
  if (!neighbors_match(17, fx::kNeighborsOf17))
    complain("N(17) (with edge {6,17} restored) differs from the example");

  if (rep.violations.empty()) {
    try {
      ProofOutcome out = replay_deletion_proof(g, fx::paper_script(g));
      if (out.alpha_h != 8) complain("alpha after deletions is not 8");
      std::vector<int> rvec(fx::kResidualIndependentSet.begin(),
                            fx::kResidualIndependentSet.end());
      VertexSet resid = fx::label_set(rvec);
      if (!is_independent_set(out.residual, resid))
        complain("residual set {6,12,15,16,17,18,24,27} is not independent after deletions");
    } catch (const std::invalid_argument& e) {
      complain(std::string("deletion script replay failed: ") + e.what());
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

inline bool validate_fixture(const Graph& g) { return validate_fixture_report(g).ok; }

namespace fixture {

// Backtracking reconstruction of the fixture: relabel the 27-lines model
// so that all pairwise constraints hold, then attach the apex. The
// visitor sees each combinatorially valid candidate (already passing
// validate_fixture) and returns true to stop the search.
class Search {
 public:
  explicit Search(std::function<bool(const Graph&)> visitor)
      : model_(schlafli_complement()), visitor_(std::move(visitor)) {}

  bool run() {
    constraints_ = pair_constraints();
    assign_.assign(27, -1);
    used_ = 0;
    order_ = label_order();
    return place(0);
  }

 private:
  // labels carrying constraints, most-constrained first; 6 and 17 have
  // full neighborhoods, so they anchor the search
  static std::vector<int> label_order() {
    return {6, 17, 22, 13, 25, 9, 19, 5, 27, 18, 21, 14, 26,
            1,  4, 12, 24, 7, 20, 15, 16, 8};
  }

  bool compatible(int label, int vertex) const {
    for (int other = 1; other <= 27; ++other) {
      int ov = assign_[other - 1];
      if (ov < 0) continue;
      int want = constraints_[index_of_label(label)][index_of_label(other)];
      if (want == 0) continue;
      bool adj = model_.adjacent(vertex, ov);
      if (adj != (want > 0)) return false;
    }
    return true;
  }

  bool place(std::size_t depth) {
    if (depth == order_.size()) return finish();
    int label = order_[depth];
    // the model is vertex-transitive, so the first label may be pinned
    int lo = 0, hi = 27;
    if (depth == 0) hi = 1;
    for (int v = lo; v < hi; ++v) {
      if ((used_ >> v) & 1) continue;
      if (!compatible(label, v)) continue;
      assign_[label - 1] = v;
      used_ |= std::uint64_t{1} << v;
      if (place(depth + 1)) return true;
      used_ &= ~(std::uint64_t{1} << v);
      assign_[label - 1] = -1;
    }
    return false;
  }

  // Constrained labels placed; distribute the 5 leftover model vertices
  // over the free labels {2,3,10,11,23}. Only which vertex becomes
  // label 10 matters: the other four all end up in the apex set.
  bool finish() {
    std::vector<int> leftovers;
    for (int v = 0; v < 27; ++v)
      if (!((used_ >> v) & 1)) leftovers.push_back(v);
    const std::array<int, 5> free_labels = {2, 3, 11, 23, 10};
    for (std::size_t ten = 0; ten < leftovers.size(); ++ten) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < leftovers.size(); ++i) {
        if (i == ten) continue;
        assign_[free_labels[k++] - 1] = leftovers[i];
      }
      assign_[10 - 1] = leftovers[ten];
      if (emit()) return true;
    }
    for (int l : free_labels) assign_[l - 1] = -1;
    return false;
  }

  bool emit() {
    // label l -> index l-1; model vertex assign_[l-1]
    std::vector<int> where(27, -1);
    for (int l = 1; l <= 27; ++l) where[assign_[l - 1]] = l - 1;
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : model_.edges()) es.emplace_back(where[u], where[v]);
    std::vector<std::string> labels;
    for (int l = 1; l <= 27; ++l) labels.push_back(std::to_string(l));
    Graph inner(27, es, labels);
    std::vector<int> an(kApexNeighbors.begin(), kApexNeighbors.end());
    VertexSet apex_nbrs = label_set(an, 27);
    Graph candidate = apex_extension(inner, apex_nbrs);
    if (!validate_fixture(candidate)) return false;
    return visitor_(candidate);
  }

  Graph model_;
  std::function<bool(const Graph&)> visitor_;
  std::vector<std::vector<int>> constraints_;
  std::vector<int> assign_;
  std::uint64_t used_ = 0;
  std::vector<int> order_;
};

}  // namespace fixture

}  // namespace capbound
