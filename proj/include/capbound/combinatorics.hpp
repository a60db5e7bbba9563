#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capbound/graph.hpp"
#include "capbound/lp.hpp"

namespace capbound {

namespace detail {

inline std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

// Greedy clique cover of the vertices in `mask`; its size bounds the
// independence number of the induced subgraph from above.
inline int greedy_clique_cover_bound(const Graph& g, std::uint64_t mask) {
  int cover = 0;
  while (mask) {
    int v = std::countr_zero(mask);
    std::uint64_t clique = std::uint64_t{1} << v;
    std::uint64_t cand = mask & g.neighbors(v);
    while (cand) {
      int u = std::countr_zero(cand);
      clique |= std::uint64_t{1} << u;
      cand &= g.neighbors(u);
    }
    mask &= ~clique;
    ++cover;
  }
  return cover;
}

struct MisSearch {
  const Graph& g;
  std::uint64_t best_set = 0;
  int best = 0;

  // Lowest-index-first branching: on each candidate vertex in ascending
  // order, either take it or discard it, so the first optimum found is
  // the canonical witness.
  void run(std::uint64_t cand, std::uint64_t cur, int cur_size) {
    if (cur_size > best) {
      best = cur_size;
      best_set = cur;
    }
    if (!cand) return;
    if (cur_size + greedy_clique_cover_bound(g, cand) <= best) return;
    int v = std::countr_zero(cand);
    std::uint64_t bit = std::uint64_t{1} << v;
    run(cand & ~bit & ~g.neighbors(v), cur | bit, cur_size + 1);
    run(cand & ~bit, cur, cur_size);
  }
};

}  // namespace detail

// Exact alpha(G) with a canonical witness independent set.
inline std::pair<int, VertexSet> independence_number_witness(const Graph& g) {
  detail::MisSearch s{g};
  s.run(detail::low_mask(g.n()), 0, 0);
  return {s.best, VertexSet(s.best_set, g.n())};
}

inline int independence_number(const Graph& g) {
  return independence_number_witness(g).first;
}

inline bool is_independent_set(const Graph& g, const VertexSet& s) {
  if (s.n != g.n()) throw std::invalid_argument("is_independent_set: wrong graph");
  for (int v : s.members())
    if (g.neighbors(v) & s.bits) return false;
  return true;
}

inline bool is_clique(const Graph& g, const VertexSet& s) {
  if (s.n != g.n()) throw std::invalid_argument("is_clique: wrong graph");
  for (int v : s.members())
    if ((s.bits & ~(std::uint64_t{1} << v)) & ~g.neighbors(v)) return false;
  return true;
}

// All maximal cliques of a bound graph, complete and duplicate-free.
struct CliqueList {
  std::vector<VertexSet> cliques;
};

namespace detail {

struct BronKerbosch {
  const Graph& g;
  std::vector<std::uint64_t> out;

  void expand(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
    if (!p && !x) {
      out.push_back(r);
      return;
    }
    // pivot: vertex of P|X covering the most of P
    int pivot = -1, best = -1;
    for (std::uint64_t b = p | x; b; b &= b - 1) {
      int u = std::countr_zero(b);
      int c = std::popcount(p & g.neighbors(u));
      if (c > best) best = c, pivot = u;
    }
    std::uint64_t ext = p & ~g.neighbors(pivot);
    for (std::uint64_t b = ext; b; b &= b - 1) {
      int v = std::countr_zero(b);
      std::uint64_t bit = std::uint64_t{1} << v;
      expand(r | bit, p & g.neighbors(v), x & g.neighbors(v));
      p &= ~bit;
      x |= bit;
    }
  }
};

}  // namespace detail

inline CliqueList maximal_cliques(const Graph& g) {
  detail::BronKerbosch bk{g};
  bk.expand(0, detail::low_mask(g.n()), 0);
  std::sort(bk.out.begin(), bk.out.end());
  CliqueList list;
  for (std::uint64_t c : bk.out) list.cliques.emplace_back(c, g.n());
  return list;
}

// LP over maximal-clique constraints only; non-maximal cliques are
// dominated and add nothing to the optimum.
inline LpProblem alpha_f_problem(const Graph& g, const CliqueList& cliques) {
  LpProblem p;
  p.nvars = g.n();
  p.objective.assign(g.n(), Rational(1));
  for (const auto& c : cliques.cliques) {
    LpProblem::Row row;
    row.coeffs.assign(g.n(), Rational(0));
    for (int v : c.members()) row.coeffs[v] = 1;
    row.rel = Rel::LE;
    row.rhs = 1;
    p.rows.push_back(std::move(row));
  }
  return p;
}

// alpha_f(G) with an optimality certificate; the dual side is a
// fractional clique cover of equal value.
inline std::pair<Rational, LpCertificate> fractional_independence(const Graph& g) {
  LpProblem p = alpha_f_problem(g, maximal_cliques(g));
  LpCertificate c = solve(p);
  if (c.status != LpStatus::Optimal)
    throw std::logic_error("fractional_independence: LP not optimal");
  return {c.objective, std::move(c)};
}

namespace detail {

struct CoverSearch {
  const Graph& g;
  const std::vector<std::uint64_t>& cliques;
  int best;

  void run(std::uint64_t uncovered, int used) {
    if (!uncovered) {
      best = std::min(best, used);
      return;
    }
    // every clique covers at most one vertex of an independent set, so a
    // greedy independent set of the uncovered part is a lower bound
    int lb = 0;
    std::uint64_t rest = uncovered;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= ~(g.neighbors(v) | (std::uint64_t{1} << v));
      ++lb;
    }
    if (used + lb >= best) return;
    int v = std::countr_zero(uncovered);
    for (std::uint64_t c : cliques)
      if (c & (std::uint64_t{1} << v)) run(uncovered & ~c, used + 1);
  }
};

}  // namespace detail

// Exact minimum clique cover; exact-cover search over maximal cliques.
inline int clique_cover_number(const Graph& g) {
  if (g.n() > 30) throw std::invalid_argument("clique_cover_number: n > 30");
  auto list = maximal_cliques(g);
  std::vector<std::uint64_t> cliques;
  for (const auto& c : list.cliques) cliques.push_back(c.bits);
  detail::CoverSearch s{g, cliques, g.n() + 1};
  s.run(detail::low_mask(g.n()), 0);
  return s.best;
}

}  // namespace capbound
