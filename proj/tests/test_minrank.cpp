#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "capbound/fixture.hpp"
#include "capbound/graph.hpp"
#include "capbound/graph_io.hpp"
#include "capbound/matrix.hpp"
#include "capbound/minrank.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

const char* fixtures_dir = CAPBOUND_FIXTURES_DIR;

Graph load_fixture() { return load_graph(std::string(fixtures_dir) + "/modified_schlafli.g"); }

RatMatrix schlafli_a_minus_i(const Graph& g27) {
  RatMatrix m = adjacency_matrix(g27);
  for (int i = 0; i < 27; ++i) m.at(i, i) = -1;
  return m;
}

}  // namespace

TEST_CASE("rank over Q and F_p") {
  CHECK(rank(RatMatrix::identity(6), FieldSpec::rationals()) == 6);
  CHECK(rank(RatMatrix::identity(6), FieldSpec::prime(5)) == 6);
  RatMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 4;
  m.at(1, 0) = 1;
  m.at(1, 1) = 2;
  CHECK(rank(m, FieldSpec::rationals()) == 1);
  CHECK(rank(m, FieldSpec::prime(2)) == 1);  // reduces to the zero matrix... rank 1? no:
  // over F_2 the matrix is [[0,0],[1,0]], rank 1 as well
}

TEST_CASE("A - I of the Schlafli complement has rank 7 over Q and F_11") {
  RatMatrix m = schlafli_a_minus_i(schlafli_complement());
  CHECK(rank(m, FieldSpec::rationals()) == 7);
  CHECK(rank(m, FieldSpec::prime(11)) == 7);
}

TEST_CASE("rank over F_p never exceeds rank over Q for integer matrices") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<long>(rng() % 7) - 3;
    int rq = rank(m, FieldSpec::rationals());
    for (std::uint32_t p : {2u, 3u, 11u}) CHECK(rank(m, FieldSpec::prime(p)) <= rq);
  }
}

TEST_CASE("check_fits") {
  Graph c5 = cycle(5);
  CHECK(check_fits(FittingMatrix(FieldSpec::rationals(), RatMatrix::identity(5), c5)));
  // adjacency matrix alone has a zero diagonal: fits nothing
  CHECK_FALSE(check_fits(FittingMatrix(FieldSpec::rationals(), adjacency_matrix(c5), c5)));
  Graph s = schlafli_complement();
  CHECK(check_fits(FittingMatrix(FieldSpec::rationals(), schlafli_a_minus_i(s), s)));
  CHECK(check_fits(FittingMatrix(FieldSpec::prime(11), schlafli_a_minus_i(s), s)));
  // an entry that vanishes only mod p: nonzero over Q, zero diagonal over F_11
  RatMatrix m = RatMatrix::identity(5);
  m.at(0, 0) = 11;
  CHECK(check_fits(FittingMatrix(FieldSpec::rationals(), m, c5)));
  CHECK_FALSE(check_fits(FittingMatrix(FieldSpec::prime(11), m, c5)));
}

TEST_CASE("minrank_upper certifies via explicit matrices") {
  Graph s = schlafli_complement();
  CHECK(minrank_upper(s, FittingMatrix(FieldSpec::rationals(), schlafli_a_minus_i(s), s)) == 7);

  auto [c5m, c5f] = load_matrix(std::string(fixtures_dir) + "/c5_rank3_Q.mat");
  CHECK(minrank_upper(cycle(5), FittingMatrix(c5f, c5m, cycle(5))) == 3);

  CHECK_THROWS_AS(
      minrank_upper(cycle(5), FittingMatrix(FieldSpec::rationals(), adjacency_matrix(cycle(5)),
                                            cycle(5))),
      std::invalid_argument);
}

TEST_CASE("clique cover fitting matrix certifies the chi-bar end") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 8));
    FittingMatrix b = clique_cover_fitting_matrix(g, FieldSpec::rationals());
    int r = minrank_upper(g, b);  // validates the fit
    CHECK(r >= independence_number(g));
    CHECK(r <= g.n());
  }
}

TEST_CASE("minrank_exact_small") {
  for (int m : {1, 3, 5}) CHECK(minrank_exact_small(complete_graph(m), FieldSpec::prime(2)) == 1);
  for (int m : {1, 4}) CHECK(minrank_exact_small(Graph(m), FieldSpec::rationals()) == m);
  CHECK(minrank_exact_small(cycle(5), FieldSpec::prime(2)) == 3);
  CHECK(minrank_exact_small(path_graph(5), FieldSpec::rationals()) == 3);  // alpha = cover = 3
  // C_5 over Q: alpha = 2 < cover = 3 and no enumeration is possible
  CHECK_THROWS_AS(minrank_exact_small(cycle(5), FieldSpec::rationals()), std::invalid_argument);
}

TEST_CASE("kronecker fit closure: B fits G implies B x B fits G x G") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 12; ++trial) {
    Graph g = testutil::random_graph(rng, 2 + static_cast<int>(rng() % 3));
    // random fitting matrix: nonzero diagonal, free on edges
    RatMatrix m = RatMatrix::identity(g.n());
    for (auto [u, v] : g.edges()) {
      m.at(u, v) = static_cast<long>(rng() % 3);
      m.at(v, u) = static_cast<long>(rng() % 3);
    }
    FittingMatrix b(FieldSpec::rationals(), m, g);
    REQUIRE(check_fits(b));
    Graph gg = strong_product(g, g);
    FittingMatrix bb(FieldSpec::rationals(), kronecker(m, m), gg);
    CHECK(check_fits(bb));
    CHECK(minrank_upper(gg, bb) <= minrank_upper(g, b) * minrank_upper(g, b));
  }
}

TEST_CASE("block diagonal composition is additive in rank and fits the union") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 12; ++trial) {
    Graph a = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 4));
    Graph b = testutil::random_graph(rng, 1 + static_cast<int>(rng() % 4));
    FittingMatrix fa = clique_cover_fitting_matrix(a, FieldSpec::rationals());
    FittingMatrix fb = clique_cover_fitting_matrix(b, FieldSpec::rationals());
    Graph u = disjoint_union(a, b);
    FittingMatrix fu(FieldSpec::rationals(), block_diag(fa.entries, fb.entries), u);
    CHECK(minrank_upper(u, fu) == minrank_upper(a, fa) + minrank_upper(b, fb));
  }
}

TEST_CASE("tims_step validates each hypothesis with a specific error") {
  Graph g = load_fixture();
  std::vector<int> iv(fixture::kMaxIndependentSet.begin(), fixture::kMaxIndependentSet.end());
  VertexSet I = fixture::label_set(iv);
  int u6 = fixture::index_of_label(6), w5 = fixture::index_of_label(5);

  Graph h = tims_step(g, I, u6, w5);
  CHECK(h.edge_count() == g.edge_count() - 1);
  CHECK_FALSE(h.adjacent(u6, w5));

  CHECK_THROWS_WITH(tims_step(g, I.without(fixture::index_of_label(8)), u6, w5),
                    Catch::Matchers::ContainsSubstring("not maximum"));
  CHECK_THROWS_WITH(tims_step(g, I, fixture::index_of_label(8), w5),
                    Catch::Matchers::ContainsSubstring("u lies in I"));
  CHECK_THROWS_WITH(tims_step(g, I, u6, fixture::index_of_label(9)),
                    Catch::Matchers::ContainsSubstring("avoid I"));
  CHECK_THROWS_WITH(tims_step(g, I, u6, fixture::index_of_label(7)),
                    Catch::Matchers::ContainsSubstring("not adjacent to u"));
  // w = 13 is adjacent to u = 6 but sits in I
  CHECK_THROWS_WITH(tims_step(g, I, u6, fixture::index_of_label(13)),
                    Catch::Matchers::ContainsSubstring("avoid I"));
  // w = 14 is adjacent to 6 and to 25 in J
  CHECK_THROWS_WITH(tims_step(g, I, u6, fixture::index_of_label(14)),
                    Catch::Matchers::ContainsSubstring("neighbor in J"));
  // an isolated u has empty J; reachable only when maximality is waived
  Graph k1c5 = disjoint_union(cycle(5), Graph(1));
  CHECK_THROWS_WITH(tims_step(k1c5, VertexSet::of({0, 2}, 6), 5, 3, /*require_maximum=*/false),
                    Catch::Matchers::ContainsSubstring("J = N(u) cap I is empty"));
}

TEST_CASE("fixture validates and the deletion proof replays") {
  Graph g = load_fixture();
  FixtureReport rep = validate_fixture_report(g);
  CAPTURE(rep.violations);
  REQUIRE(rep.ok);

  DeletionScript script = load_deletion_script(g, std::string(fixtures_dir) +
                                                      "/deletion_script.txt");
  REQUIRE(script.steps.size() == 11);
  ProofOutcome out = replay_deletion_proof(g, script);
  CHECK(out.verdict == ProofOutcome::Verdict::MinrkExceedsAlpha);
  CHECK(out.alpha_g == 7);
  CHECK(out.alpha_h == 8);
  std::vector<int> rv(fixture::kResidualIndependentSet.begin(),
                      fixture::kResidualIndependentSet.end());
  CHECK(is_independent_set(out.residual, fixture::label_set(rv)));
  CHECK(out.summary.find("minrk(G) > alpha(G) = 7") != std::string::npos);

  // apex extension of the rank-7 certificate pins the upper bound to 8
  VertexSet part27(0, 28);
  for (int v = 0; v < 27; ++v) part27 = part27.with(v);
  RatMatrix ami = schlafli_a_minus_i(induced_subgraph(g, part27));
  RatMatrix apex(1, 1);
  apex.at(0, 0) = 1;
  FittingMatrix fit(FieldSpec::prime(11), block_diag(ami, apex), g);
  CHECK(minrank_upper(g, fit) == 8);
}

TEST_CASE("empty script is inconclusive") {
  Graph c5 = cycle(5);
  ProofOutcome out = replay_deletion_proof(c5, DeletionScript{});
  CHECK(out.verdict == ProofOutcome::Verdict::Inconclusive);
  CHECK(out.alpha_g == out.alpha_h);
}

TEST_CASE("deletion script text round trip") {
  Graph g = load_fixture();
  DeletionScript s = fixture::paper_script(g);
  std::string text = serialize_deletion_script(g, s);
  DeletionScript back = parse_deletion_script(g, text);
  REQUIRE(back.steps.size() == s.steps.size());
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    CHECK(back.steps[i].I == s.steps[i].I);
    CHECK(back.steps[i].u == s.steps[i].u);
    CHECK(back.steps[i].w == s.steps[i].w);
  }
  CHECK(serialize_deletion_script(g, back) == text);
}

TEST_CASE("matrix text round trip") {
  std::mt19937_64 rng(59);
  RatMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m.at(i, j) = rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5));
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    auto [back, bf] = parse_matrix(serialize_matrix(m, f));
    CHECK(back == m);
    CHECK(bf == f);
  }
}
