#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <random>

#include "capbound/combinatorics.hpp"
#include "capbound/fstar.hpp"
#include "capbound/graph.hpp"
#include "capbound/graph_io.hpp"
#include "capbound/theta.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

const char* fixtures_dir = CAPBOUND_FIXTURES_DIR;

// alpha as an oracle: bounds alpha trivially, superadditive over unions,
// value 1 on cliques; NOT submultiplicative.
BoundOracle alpha_oracle() {
  OracleFlags flags;
  flags.bounds_independence = true;
  flags.superadditive = true;
  flags.clique_value_one = true;
  return BoundOracle("alpha", [](const Graph& g) { return Rational(independence_number(g)); },
                     flags);
}

// minrank oracle over Q for odd cycles, built the certified way: every
// connected path gets an exact-search table entry, everything else falls
// back to the clique-cover bound.
BoundOracle cycle_minrank_oracle(int n) {
  Graph cn = cycle(n);
  std::vector<std::tuple<VertexSet, Rational, MinrankCert>> table;
  MinrankCert search;
  search.kind = MinrankCert::Kind::ExactSearch;
  for (int len = 1; len < n; ++len)
    for (int start = 0; start < n; ++start) {
      VertexSet s(0, n);
      for (int k = 0; k < len; ++k) s = s.with((start + k) % n);
      table.emplace_back(s, Rational((len + 1) / 2), search);
    }
  MinrankCert cover;
  cover.kind = MinrankCert::Kind::CliqueCover;
  table.emplace_back(VertexSet::full(n), rat(n + 1, 2), cover);
  return make_minrank_oracle(cn, FieldSpec::rationals(), table);
}

}  // namespace

TEST_CASE("path minrank values verified by exhaustive search") {
  for (int k = 1; k <= 9; ++k) {
    CHECK(minrank_exact_small(path_graph(k), FieldSpec::rationals()) == (k + 1) / 2);
    CHECK(clique_cover_number(path_graph(k)) == (k + 1) / 2);
  }
}

TEST_CASE("fstar with a clique-valued oracle reduces to alpha_f") {
  std::mt19937_64 rng(79);
  BoundOracle f = alpha_oracle();
  for (int trial = 0; trial < 15; ++trial) {
    Graph g = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 6));
    FStarResult r = fstar(g, f, clique_family(g));
    CHECK(r.value == fractional_independence(g).first);
    CHECK(verify_certificate(alpha_f_problem(g, maximal_cliques(g)), r.certificate));
  }
}

TEST_CASE("fstar of odd cycles with the minrank oracle is n/2") {
  for (int n : {5, 7, 9}) {
    BoundOracle f = cycle_minrank_oracle(n);
    FStarResult r = fstar_full(cycle(n), f);
    CHECK(r.value == rat(n, 2));
    CHECK(r.bounds_capacity);  // minrk flags license the capacity bound
  }
}

TEST_CASE("fstar never exceeds f") {
  std::mt19937_64 rng(83);
  BoundOracle f = alpha_oracle();
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 6));
    CHECK(fstar_full(g, f).value <= f(g));
  }
}

TEST_CASE("family monotonicity: more constraints never increase the value") {
  std::mt19937_64 rng(89);
  BoundOracle f = alpha_oracle();
  for (int trial = 0; trial < 15; ++trial) {
    Graph g = testutil::random_graph(rng, 2 + static_cast<int>(rng() % 4));
    Rational with_cliques = fstar(g, f, default_family(g)).value;
    Rational with_all = fstar_full(g, f, /*prune=*/false).value;
    CHECK(with_all <= with_cliques);
    SubsetFamily just_v;
    just_v.sets.push_back(VertexSet::full(g.n()));
    CHECK(with_cliques <= fstar(g, f, just_v).value);
  }
}

TEST_CASE("pruned and unpruned fstar_full agree exactly") {
  std::mt19937_64 rng(97);
  BoundOracle f = alpha_oracle();
  for (int trial = 0; trial < 12; ++trial) {
    Graph g = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 5));
    CHECK(fstar_full(g, f, true).value == fstar_full(g, f, false).value);
  }
}

TEST_CASE("subadditivity and superadditive equality over disjoint unions") {
  std::mt19937_64 rng(101);
  BoundOracle f = alpha_oracle();
  for (int trial = 0; trial < 10; ++trial) {
    Graph a = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 4));
    Graph b = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 4));
    Rational whole = fstar_full(disjoint_union(a, b), f).value;
    Rational parts = fstar_full(a, f).value + fstar_full(b, f).value;
    CHECK(whole <= parts);
    CHECK(check_additivity(a, b, f));  // alpha is superadditive: equality
  }
  BoundOracle mr = cycle_minrank_oracle(5);
  CHECK(check_additivity(complete_graph(2), complete_graph(2), mr));
  CHECK(check_additivity(cycle(5), complete_graph(3), mr));
}

TEST_CASE("clique-value-one oracles stay below alpha_f") {
  std::mt19937_64 rng(103);
  BoundOracle f = alpha_oracle();
  for (int trial = 0; trial < 15; ++trial) {
    Graph g = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 5));
    CHECK(fstar_full(g, f).value <= fractional_independence(g).first);
  }
}

TEST_CASE("dual cover of fstar extracts to exact rationals summing to the value") {
  Graph c5 = cycle(5);
  FStarResult r = fstar_full(c5, cycle_minrank_oracle(5));
  Rational mass = 0;
  for (const auto& entry : r.cover) {
    CHECK(entry.q > 0);
    mass += entry.q * entry.fvalue;
  }
  CHECK(mass == r.value);
}

TEST_CASE("theta oracle is outward-rounded and fixes theta as an fstar fixed point") {
  BoundOracle th = make_theta_oracle(1e-7);
  CHECK(th(Graph(1)) == 1);
  Rational c5v = th(cycle(5));
  double sqrt5 = std::sqrt(5.0);
  CHECK(rat_to_double(c5v) >= sqrt5 - 1e-9);
  CHECK(rat_to_double(c5v) <= sqrt5 + 1e-5);

  Rational star = fstar_full(cycle(5), th).value;
  CHECK(std::fabs(rat_to_double(star) - sqrt5) <= 1e-3);
}

TEST_CASE("oracle memoization evaluates each subgraph once") {
  std::atomic<int> calls{0};
  OracleFlags flags;
  BoundOracle f("counter",
                [&calls](const Graph& g) {
                  ++calls;
                  return Rational(g.n());
                },
                flags);
  Graph c5 = cycle(5);
  fstar_full(c5, f, false);
  int after_first = calls.load();
  fstar_full(c5, f, false);
  CHECK(calls.load() == after_first);  // all 31 subgraph values cached
}

TEST_CASE("geometric mean oracle combines and gates flags") {
  BoundOracle th = make_theta_oracle(1e-6);
  BoundOracle base = cycle_minrank_oracle(5);
  BoundOracle mean = geometric_mean_oracle(rat(1, 3), th, base);
  CHECK(mean.flags().bounds_independence);
  CHECK(mean.flags().submultiplicative);
  Graph c5 = cycle(5);
  double expect = std::pow(rat_to_double(th(c5)), 1.0 / 3) *
                  std::pow(rat_to_double(base(c5)), 2.0 / 3);
  CHECK(rat_to_double(mean(c5)) == Catch::Approx(expect).margin(1e-6));
  CHECK(rat_to_double(mean(c5)) >= expect - 1e-9);  // rounded outward

  CHECK(geometric_mean_oracle(1, th, base).name() == th.name());
  CHECK(geometric_mean_oracle(0, th, base).name() == base.name());
  CHECK_THROWS_AS(geometric_mean_oracle(rat(1, 2), alpha_oracle(), base),
                  std::invalid_argument);  // alpha is not submultiplicative
  CHECK_THROWS_AS(geometric_mean_oracle(2, th, base), std::invalid_argument);
}

TEST_CASE("geometric mean optimization") {
  auto [a0, v0] = optimize_geometric_mean({{3.0, 3.0, 1}}, 1e-9);
  CHECK(v0 == Catch::Approx(3.0).margin(1e-6));

  auto [a, v] = optimize_geometric_mean({{9.0, 7.0, 1}, {std::sqrt(5.0), 2.5, 7}}, 1e-9);
  CHECK(a == Catch::Approx(0.287291).margin(1e-3));
  CHECK(v == Catch::Approx(24.4721).margin(1e-3));
  // endpoint a = 1 recovers plain theta additivity, strictly worse
  double at_one = 9.0 + 7 * std::sqrt(5.0);
  CHECK(v < at_one);
  CHECK(at_one == Catch::Approx(24.6525).margin(1e-3));

  CHECK_THROWS_AS(optimize_geometric_mean({{0.0, 1.0, 1}}), std::invalid_argument);
}

TEST_CASE("union bound corollary") {
  CHECK(union_bound_corollary(Graph(1), Graph(1), 1, 1) == 2);
  CHECK(union_bound_corollary(schlafli_complement(), cycle(5), 7, 3) == rat(19, 2));
  // symmetry
  CHECK(union_bound_corollary(cycle(5), schlafli_complement(), 3, 7) == rat(19, 2));
}

TEST_CASE("oracle table file round trip and certified load") {
  Graph g = load_graph(std::string(fixtures_dir) + "/modified_schlafli.g");
  auto table =
      load_minrank_table(g, std::string(fixtures_dir) + "/oracle_table_F11.txt",
                         FieldSpec::prime(11));
  REQUIRE(table.size() == 1);
  CHECK(std::get<1>(table[0]) == 7);
  CHECK(std::get<0>(table[0]).size() == 27);
  // the loader validated the matrix certificate; a wrong value must throw
  auto bad = table;
  std::get<1>(bad[0]) = 6;
  CHECK_THROWS_AS(make_minrank_oracle(g, FieldSpec::prime(11), bad), std::invalid_argument);
  // make the oracle and reproduce the headline LP value
  BoundOracle oracle = make_minrank_oracle(g, FieldSpec::prime(11), table);
  SubsetFamily fam = clique_family(g);
  fam.sets.push_back(std::get<0>(table[0]));
  FStarResult r = fstar(g, oracle, fam);
  CHECK(r.value == rat(71, 9));
  CHECK(r.bounds_capacity);
  CHECK(r.bounds_broadcast);

  std::string text = serialize_oracle_table(
      g, {{std::get<0>(table[0]), Rational(7), "modified_schlafli_AmI_F11.mat"}});
  auto lines = parse_oracle_table(g, text);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].value == 7);
  CHECK(lines[0].cert_ref == "modified_schlafli_AmI_F11.mat");
  CHECK(serialize_oracle_table(g, lines) == text);
}

TEST_CASE("subset family file round trip") {
  Graph c7 = cycle(7);
  SubsetFamily fam = default_family(c7);
  std::string text = serialize_subset_family(c7, fam);
  SubsetFamily back = parse_subset_family(c7, text);
  REQUIRE(back.sets.size() == fam.sets.size());
  for (std::size_t i = 0; i < fam.sets.size(); ++i) CHECK(back.sets[i] == fam.sets[i]);
  CHECK(serialize_subset_family(c7, back) == text);
  CHECK_THROWS_AS(parse_subset_family(c7, "{}\n"), std::invalid_argument);
}

TEST_CASE("non-covering families are rejected") {
  Graph c5 = cycle(5);
  SubsetFamily partial;
  partial.sets.push_back(VertexSet::of({0, 1}, 5));
  CHECK_THROWS_AS(fstar(c5, alpha_oracle(), partial), std::invalid_argument);
}

TEST_CASE("fstar_full size limit") {
  CHECK_THROWS_AS(fstar_full(strong_product(cycle(5), cycle(5)), alpha_oracle()),
                  std::invalid_argument);
}
