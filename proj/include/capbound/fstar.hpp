#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <tuple>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "capbound/combinatorics.hpp"
#include "capbound/graph.hpp"
#include "capbound/lp.hpp"
#include "capbound/minrank.hpp"
#include "capbound/theta.hpp"

namespace capbound {

// Which paper-level hypotheses the oracle is allowed to claim. The flag
// set gates which theorem a f* result may invoke; a plain LP value never
// silently upgrades to a capacity or broadcast bound.
struct OracleFlags {
  bool bounds_independence = false;
  bool submultiplicative = false;
  bool superadditive = false;
  bool clique_value_one = false;
  bool bounds_broadcast = false;
};

// Certified upper-bound evaluator on induced subgraphs, memoized behind
// a thread-safe cache keyed by the subgraph's adjacency encoding.
class BoundOracle {
 public:
  BoundOracle(std::string name, std::function<Rational(const Graph&)> eval, OracleFlags flags,
              std::map<std::string, std::string> provenance = {})
      : name_(std::move(name)),
        eval_(std::move(eval)),
        flags_(flags),
        provenance_(std::move(provenance)),
        cache_(std::make_shared<Cache>()) {
    if (flags_.bounds_independence && (*this)(Graph(1)) < 1)
      throw std::invalid_argument("BoundOracle: claims to bound alpha but f(K_1) < 1");
    if (flags_.clique_value_one)  // spot-check the claim on small cliques
      for (int m : {1, 2, 3})
        if ((*this)(complete_graph(m)) != 1)
          throw std::invalid_argument("BoundOracle: claims clique value 1 but f(K_" +
                                      std::to_string(m) + ") != 1");
  }

  Rational operator()(const Graph& g) const {
    std::string key = g.adjacency_key();
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->values.find(key);
      if (it != cache_->values.end()) return it->second;
    }
    Rational v = eval_(g);
    if (v < 0) throw std::invalid_argument("BoundOracle: negative value from " + name_);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->values.emplace(std::move(key), v);
    return v;
  }

  const std::string& name() const { return name_; }
  const OracleFlags& flags() const { return flags_; }
  const std::map<std::string, std::string>& provenance() const { return provenance_; }

 private:
  struct Cache {
    std::mutex mutex;
    std::unordered_map<std::string, Rational> values;
  };
  std::string name_;
  std::function<Rational(const Graph&)> eval_;
  OracleFlags flags_;
  std::map<std::string, std::string> provenance_;
  std::shared_ptr<Cache> cache_;
};

struct SubsetFamily {
  std::vector<VertexSet> sets;

  bool covers(const Graph& g) const {
    std::uint64_t seen = 0;
    for (const auto& s : sets) {
      if (s.n != g.n()) throw std::invalid_argument("SubsetFamily: set bound to wrong graph");
      seen |= s.bits;
    }
    return seen == VertexSet::full(g.n()).bits;
  }
};

inline SubsetFamily clique_family(const Graph& g) {
  SubsetFamily fam;
  for (const auto& c : maximal_cliques(g).cliques) fam.sets.push_back(c);
  return fam;
}

// maximal cliques plus the whole vertex set: the family the CLI and
// reports fall back to when none is supplied
inline SubsetFamily default_family(const Graph& g) {
  SubsetFamily fam = clique_family(g);
  fam.sets.push_back(VertexSet::full(g.n()));
  return fam;
}

inline SubsetFamily full_family(const Graph& g) {
  if (g.n() > 16) throw std::invalid_argument("full_family: n > 16");
  SubsetFamily fam;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << g.n()); ++s)
    fam.sets.emplace_back(s, g.n());
  return fam;
}

struct FStarResult {
  Rational value;
  std::vector<Rational> weights;  // primal w(x)
  struct CoverEntry {
    VertexSet set;
    Rational q;
    Rational fvalue;
  };
  std::vector<CoverEntry> cover;  // dual support
  bool bounds_capacity = false;   // Theta(G) <= value is licensed
  bool bounds_broadcast = false;  // beta(G) <= value is licensed
  LpCertificate certificate;
  std::vector<VertexSet> family;  // row order matching the certificate
};

namespace detail {

// Direct replay of the dual-side counting argument on the maximum
// independent set: sum over x in Gamma of the cover mass through x must
// reach |Gamma|. Redundant given dual feasibility, which is the point:
// it checks the certificate against the theorem it claims, not against
// the solver.
inline void recheck_counting_argument(const Graph& g, const FStarResult& r) {
  auto [alpha, gamma] = independence_number_witness(g);
  Rational mass = 0;
  for (int x : gamma.members())
    for (const auto& entry : r.cover)
      if (entry.set.contains(x)) mass += entry.q;
  if (mass < alpha)
    throw std::logic_error("fstar: dual cover fails the counting argument");
}

}  // namespace detail

// f* over a restricted constraint family: the LP value is an upper bound
// for the full f*(G), and inherits its theorem licenses from the oracle
// flags. The family must cover every vertex or the LP is unbounded.
inline FStarResult fstar(const Graph& g, const BoundOracle& f, const SubsetFamily& family) {
  if (!family.covers(g)) throw std::invalid_argument("fstar: family does not cover V(G)");
  LpProblem p;
  p.nvars = g.n();
  p.objective.assign(g.n(), Rational(1));
  std::vector<Rational> fvals;
  for (const auto& s : family.sets) {
    Rational fv = f(induced_subgraph(g, s));
    fvals.push_back(fv);
    LpProblem::Row row;
    row.coeffs.assign(g.n(), Rational(0));
    for (int v : s.members()) row.coeffs[v] = 1;
    row.rel = Rel::LE;
    row.rhs = fv;
    p.rows.push_back(std::move(row));
  }
  LpCertificate cert = solve(p);
  if (cert.status != LpStatus::Optimal)
    throw std::logic_error("fstar: LP did not reach an optimum");
  FStarResult r;
  r.value = cert.objective;
  r.weights = cert.primal;
  for (std::size_t i = 0; i < family.sets.size(); ++i)
    if (cert.dual[i] != 0) r.cover.push_back({family.sets[i], cert.dual[i], fvals[i]});
  r.bounds_capacity = f.flags().bounds_independence && f.flags().submultiplicative;
  r.bounds_broadcast = f.flags().bounds_broadcast;
  r.family = family.sets;
  r.certificate = std::move(cert);
  if (r.bounds_capacity && g.n() <= 20) detail::recheck_counting_argument(g, r);
  return r;
}

// The true f*(G): all 2^n - 1 subsets, with sound dominance pruning
// (S is dropped when some one-vertex extension already has a value no
// larger, since that superset's constraint implies S's).
inline FStarResult fstar_full(const Graph& g, const BoundOracle& f, bool prune = true) {
  if (g.n() > 16) throw std::invalid_argument("fstar_full: n > 16");
  const std::uint64_t total = std::uint64_t{1} << g.n();
  std::vector<Rational> fv(total);
  for (std::uint64_t s = 1; s < total; ++s) fv[s] = f(induced_subgraph(g, VertexSet(s, g.n())));
  SubsetFamily fam;
  for (std::uint64_t s = 1; s < total; ++s) {
    bool dominated = false;
    if (prune)
      for (int v = 0; v < g.n() && !dominated; ++v) {
        std::uint64_t sup = s | (std::uint64_t{1} << v);
        dominated = sup != s && fv[sup] <= fv[s];
      }
    if (!dominated) fam.sets.emplace_back(s, g.n());
  }
  return fstar(g, f, fam);
}

// Table entry for a minrank oracle: a value plus the evidence for it.
struct MinrankCert {
  enum class Kind { FittingMatrixRank, ExactSearch, CliqueCover };
  Kind kind = Kind::CliqueCover;
  std::optional<RatMatrix> matrix;  // for FittingMatrixRank
};

// Oracle evaluating certified minrk_F upper bounds: explicit table
// entries where available, clique-cover fallback elsewhere (valid by the
// minrk <= clique-cover end of the standard chain). Uncertified table
// entries are rejected at construction.
inline BoundOracle make_minrank_oracle(
    const Graph& host, const FieldSpec& field,
    const std::vector<std::tuple<VertexSet, Rational, MinrankCert>>& table = {}) {
  auto values = std::make_shared<std::unordered_map<std::string, Rational>>();
  for (const auto& [set, value, cert] : table) {
    Graph sub = induced_subgraph(host, set);
    switch (cert.kind) {
      case MinrankCert::Kind::FittingMatrixRank: {
        if (!cert.matrix) throw std::invalid_argument("minrank table: missing matrix");
        FittingMatrix b(field, *cert.matrix, sub);
        if (Rational(minrank_upper(sub, b)) != value)
          throw std::invalid_argument("minrank table: matrix rank does not certify the value");
        break;
      }
      case MinrankCert::Kind::ExactSearch:
        if (Rational(minrank_exact_small(sub, field)) != value)
          throw std::invalid_argument("minrank table: exact search does not certify the value");
        break;
      case MinrankCert::Kind::CliqueCover:
        if (sub.n() > 30 || Rational(clique_cover_number(sub)) != value)
          throw std::invalid_argument("minrank table: clique cover does not certify the value");
        break;
    }
    (*values)[sub.adjacency_key()] = value;
  }
  auto eval = [values](const Graph& g) -> Rational {
    auto it = values->find(g.adjacency_key());
    if (it != values->end()) return it->second;
    if (g.n() <= 30) return clique_cover_number(g);
    return detail::greedy_clique_cover_bound(g, detail::low_mask(g.n()));
  };
  OracleFlags flags;
  flags.bounds_independence = true;
  flags.submultiplicative = true;
  flags.superadditive = true;
  flags.clique_value_one = true;
  flags.bounds_broadcast = (field.kind == FieldSpec::Kind::Prime);
  std::map<std::string, std::string> prov = {
      {"bounds_independence", "alpha <= minrk_F, standard chain"},
      {"submultiplicative", "minrk_F(GxH) <= minrk_F(G) minrk_F(H), Kronecker products"},
      {"superadditive", "minrk_F additive over disjoint union"},
      {"clique_value_one", "all-ones matrix fits a clique with rank 1"},
      {"bounds_broadcast", field.kind == FieldSpec::Kind::Prime
                               ? "beta <= minrk_F over finite fields"
                               : "not claimed over the rationals"}};
  return BoundOracle("minrk_" + field.str(), std::move(eval), flags, std::move(prov));
}

// Theta upper endpoints, rounded outward to rationals with denominator
// 1e9 so validity survives the float-to-exact hand-off.
inline BoundOracle make_theta_oracle(double tolerance = 1e-7) {
  auto eval = [tolerance](const Graph& g) -> Rational {
    return rat_round_up(lovasz_theta(g, tolerance).upper);
  };
  OracleFlags flags;
  flags.bounds_independence = true;
  flags.submultiplicative = true;
  std::map<std::string, std::string> prov = {
      {"bounds_independence", "alpha <= Theta <= theta"},
      {"submultiplicative", "theta(GxH) = theta(G) theta(H)"}};
  return BoundOracle("theta", std::move(eval), flags, std::move(prov));
}

// Pointwise weighted geometric mean theta^a * base^(1-a); both inputs
// must bound alpha and be submultiplicative, and the mean inherits both.
inline BoundOracle geometric_mean_oracle(const Rational& a, const BoundOracle& theta,
                                         const BoundOracle& base) {
  if (a < 0 || a > 1) throw std::invalid_argument("geometric_mean_oracle: a outside [0,1]");
  for (const BoundOracle* o : {&theta, &base})
    if (!o->flags().bounds_independence || !o->flags().submultiplicative)
      throw std::invalid_argument("geometric_mean_oracle: input oracle lacks required flags");
  if (a == 1) return theta;
  if (a == 0) return base;
  double ad = rat_to_double(a);
  auto eval = [ad, theta, base](const Graph& g) -> Rational {
    double v = std::pow(rat_to_double(theta(g)), ad) * std::pow(rat_to_double(base(g)), 1 - ad);
    return rat_round_up(v * (1 + 1e-12));
  };
  OracleFlags flags;
  flags.bounds_independence = true;
  flags.submultiplicative = true;
  return BoundOracle(theta.name() + "^" + rat_str(a) + "*" + base.name() + "^" + rat_str(1 - a),
                     std::move(eval), flags);
}

// min{minrk(G) + alpha_f(H), alpha_f(G) + minrk(H)} from certified
// minrank upper bounds. Symmetric by construction.
inline Rational union_bound_corollary(const Graph& g, const Graph& h, int minrk_g_upper,
                                      int minrk_h_upper) {
  Rational left = Rational(minrk_g_upper) + fractional_independence(h).first;
  Rational right = fractional_independence(g).first + Rational(minrk_h_upper);
  return left < right ? left : right;
}

namespace detail {

inline int resolve_vertex(const Graph& g, const std::string& tok) {
  int v = g.vertex_by_label(tok);
  if (v < 0) {
    try {
      v = std::stoi(tok);
    } catch (...) {
      v = -1;
    }
    if (v < 0 || v >= g.n()) throw std::invalid_argument("unknown vertex: " + tok);
  }
  return v;
}

inline VertexSet parse_vertex_braces(const Graph& g, const std::string& inner) {
  VertexSet s(0, g.n());
  std::istringstream members(inner);
  std::string tok;
  while (std::getline(members, tok, ',')) {
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (!tok.empty()) s = s.with(resolve_vertex(g, tok));
  }
  return s;
}

inline std::string vertex_braces(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.members()) {
    if (!first) out += ',';
    out += g.has_labels() ? g.label(v) : std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace detail

// Oracle table text: one line per entry, `S:{v1,v2,...} = p/q  # ref`
// where ref is `exact-search`, `clique-cover`, or a matrix file path
// resolved relative to the table file.
struct OracleTableLine {
  VertexSet set;
  Rational value;
  std::string cert_ref;
};

inline std::string serialize_oracle_table(const Graph& g, const std::vector<OracleTableLine>& lines) {
  std::string out;
  for (const auto& l : lines)
    out += "S:" + detail::vertex_braces(g, l.set) + " = " + rat_str(l.value) + "  # " +
           l.cert_ref + "\n";
  return out;
}

inline std::vector<OracleTableLine> parse_oracle_table(const Graph& g, const std::string& text) {
  std::vector<OracleTableLine> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto lb = line.find("S:{"), rb = line.find('}');
    auto eq = line.find('=', rb == std::string::npos ? 0 : rb);
    auto hash = line.find('#');
    if (lb == std::string::npos || rb == std::string::npos || eq == std::string::npos ||
        hash == std::string::npos || hash < eq)
      throw std::invalid_argument("oracle table: bad line: " + line);
    OracleTableLine l;
    l.set = detail::parse_vertex_braces(g, line.substr(lb + 3, rb - lb - 3));
    std::istringstream val(line.substr(eq + 1, hash - eq - 1));
    std::string tok;
    val >> tok;
    l.value = rat_parse(tok);
    std::istringstream ref(line.substr(hash + 1));
    ref >> l.cert_ref;
    if (l.cert_ref.empty()) throw std::invalid_argument("oracle table: missing certificate ref");
    lines.push_back(std::move(l));
  }
  return lines;
}

// Loads a table file into certified minrank-oracle entries; matrix
// certificates are read relative to base_dir and validated downstream
// by make_minrank_oracle.
inline std::vector<std::tuple<VertexSet, Rational, MinrankCert>> load_minrank_table(
    const Graph& g, const std::string& filepath, const FieldSpec& field) {
  std::ifstream in(filepath);
  if (!in) throw std::runtime_error("cannot open oracle table: " + filepath);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string base_dir = filepath.find('/') == std::string::npos
                             ? std::string(".")
                             : filepath.substr(0, filepath.rfind('/'));
  std::vector<std::tuple<VertexSet, Rational, MinrankCert>> out;
  for (const auto& l : parse_oracle_table(g, buf.str())) {
    MinrankCert cert;
    if (l.cert_ref == "exact-search") {
      cert.kind = MinrankCert::Kind::ExactSearch;
    } else if (l.cert_ref == "clique-cover") {
      cert.kind = MinrankCert::Kind::CliqueCover;
    } else {
      cert.kind = MinrankCert::Kind::FittingMatrixRank;
      auto [m, mfield] = load_matrix(base_dir + "/" + l.cert_ref);
      if (!(mfield == field))
        throw std::invalid_argument("oracle table: matrix field disagrees with the table's");
      cert.matrix = std::move(m);
    }
    out.emplace_back(l.set, l.value, std::move(cert));
  }
  return out;
}

// Subset family text: one vertex set per line, `{v1,v2,...}`.
inline std::string serialize_subset_family(const Graph& g, const SubsetFamily& fam) {
  std::string out;
  for (const auto& s : fam.sets) out += detail::vertex_braces(g, s) + "\n";
  return out;
}

inline SubsetFamily parse_subset_family(const Graph& g, const std::string& text) {
  SubsetFamily fam;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto lb = line.find('{'), rb = line.find('}');
    if (lb == std::string::npos || rb == std::string::npos)
      throw std::invalid_argument("subset family: bad line: " + line);
    VertexSet s = detail::parse_vertex_braces(g, line.substr(lb + 1, rb - lb - 1));
    if (s.bits == 0) throw std::invalid_argument("subset family: empty set");
    fam.sets.push_back(s);
  }
  return fam;
}

inline SubsetFamily load_subset_family(const Graph& g, const std::string& filepath) {
  std::ifstream in(filepath);
  if (!in) throw std::runtime_error("cannot open family file: " + filepath);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_subset_family(g, buf.str());
}

struct GeoComponent {
  double theta = 0;
  double base = 0;
  int multiplicity = 1;
};

// Minimizes sum_i mult_i theta_i^a base_i^(1-a) over a in [0,1]. The
// objective is a positive combination of exponentials in a, hence
// convex, so ternary search converges.
inline std::pair<double, double> optimize_geometric_mean(const std::vector<GeoComponent>& comps,
                                                         double tolerance = 1e-6) {
  for (const auto& c : comps)
    if (c.theta <= 0 || c.base <= 0 || c.multiplicity < 1)
      throw std::invalid_argument("optimize_geometric_mean: values must be positive");
  auto value = [&](double a) {
    double v = 0;
    for (const auto& c : comps)
      v += c.multiplicity * std::pow(c.theta, a) * std::pow(c.base, 1 - a);
    return v;
  };
  double lo = 0, hi = 1;
  while (hi - lo > tolerance) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (value(m1) <= value(m2))
      hi = m2;
    else
      lo = m1;
  }
  double a = (lo + hi) / 2;
  return {a, value(a)};
}

// f*(G+H) = f*(G) + f*(H) for superadditive oracles; exact equality.
inline bool check_additivity(const Graph& g, const Graph& h, const BoundOracle& f) {
  if (!f.flags().superadditive)
    throw std::invalid_argument("check_additivity: oracle is not flagged superadditive");
  Rational whole = fstar_full(disjoint_union(g, h), f).value;
  Rational parts = fstar_full(g, f).value + fstar_full(h, f).value;
  return whole == parts;
}

}  // namespace capbound
