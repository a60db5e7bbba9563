#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "capbound/combinatorics.hpp"
#include "capbound/fstar.hpp"
#include "capbound/graph.hpp"
#include "capbound/graph_io.hpp"
#include "capbound/index_coding.hpp"
#include "test_util.hpp"

using namespace capbound;

namespace {

const char* fixtures_dir = CAPBOUND_FIXTURES_DIR;

Graph load_fixture() { return load_graph(std::string(fixtures_dir) + "/modified_schlafli.g"); }

BoundOracle alpha_oracle() {
  OracleFlags flags;
  flags.bounds_independence = true;
  flags.superadditive = true;
  flags.clique_value_one = true;
  return BoundOracle("alpha", [](const Graph& g) { return Rational(independence_number(g)); },
                     flags);
}

// the fixture's certified oracle + constraint family, shared by tests
std::pair<BoundOracle, SubsetFamily> fixture_oracle(const Graph& g) {
  auto table = load_minrank_table(g, std::string(fixtures_dir) + "/oracle_table_F11.txt",
                                  FieldSpec::prime(11));
  BoundOracle oracle = make_minrank_oracle(g, FieldSpec::prime(11), table);
  SubsetFamily fam = clique_family(g);
  fam.sets.push_back(std::get<0>(table.at(0)));
  return {oracle, fam};
}

}  // namespace

TEST_CASE("whole-vertex-set cover yields a one-block plan") {
  Graph k3 = complete_graph(3);
  SubsetFamily just_v;
  just_v.sets.push_back(VertexSet::full(3));
  FStarResult r = fstar(k3, alpha_oracle(), just_v);
  SchemePlan plan = scheme_from_cover(k3, r);
  CHECK(plan.t == 1);
  REQUIRE(plan.parts.size() == 1);
  CHECK(plan.parts[0].set == VertexSet::full(3));
  CHECK(plan.parts[0].y == 1);
  CHECK(plan.total_rate == 1);
}

TEST_CASE("pentagon plan splits messages into two blocks at rate 5/2") {
  Graph c5 = cycle(5);
  BoundOracle oracle = make_minrank_oracle(c5, FieldSpec::prime(2));
  FStarResult r = fstar_full(c5, oracle);
  REQUIRE(r.value == rat(5, 2));
  SchemePlan plan = scheme_from_cover(c5, r);
  CHECK(plan.t == 2);
  CHECK(plan.total_rate == rat(5, 2));
  // recount coverage independently of the constructor's own check
  for (int x = 0; x < 5; ++x) {
    mpz_class hits = 0;
    for (const auto& part : plan.parts)
      if (part.set.contains(x)) hits += part.y;
    CHECK(hits >= plan.t);
  }
}

TEST_CASE("worked-example plan realizes the 71/9 rate") {
  Graph g = load_fixture();
  auto [oracle, fam] = fixture_oracle(g);
  FStarResult r = fstar(g, oracle, fam);
  REQUIRE(r.value == rat(71, 9));
  SchemePlan plan = scheme_from_cover(g, r);
  CHECK(plan.total_rate == rat(71, 9));
  CHECK(plan.t % 9 == 0);  // ninths can only appear with block count 9k
}

TEST_CASE("broadcast report on cliques collapses the whole chain to 1") {
  for (int m : {1, 2, 5}) {
    BoundReport r = broadcast_report(complete_graph(m), {FieldSpec::prime(2)},
                                     {alpha_oracle()});
    const BoundEntry* alpha = r.find("alpha");
    REQUIRE(alpha);
    CHECK(alpha->exact == 1);
    CHECK(r.find("alpha_f")->exact == 1);
    CHECK(r.find("clique_cover")->exact == 1);
    const BoundEntry* th = r.find("theta");
    REQUIRE(th);
    CHECK(th->lo <= 1.0 + 1e-6);
    CHECK(th->hi >= 1.0 - 1e-6);
    CHECK(r.find("minrk_2")->hi == 1.0);
    CHECK(r.find("alpha*")->exact == 1);
  }
}

TEST_CASE("broadcast report orders the fixture bounds 71/9 < 8 < 9") {
  Graph g = load_fixture();
  auto [oracle, fam] = fixture_oracle(g);
  BoundReport r = broadcast_report(g, {FieldSpec::prime(11)}, {oracle}, {fam}, 1e-5);

  CHECK(r.find("alpha")->exact == 7);
  const BoundEntry* star = r.find("minrk_11*");
  REQUIRE(star);
  CHECK(star->exact == rat(71, 9));
  CHECK(star->bounds == "capacity+broadcast");
  CHECK(star->certified);

  const BoundEntry* mr = r.find("minrk_11");
  REQUIRE(mr);
  CHECK(mr->kind == BoundEntry::Kind::Interval);
  CHECK(mr->lo == 7.0);
  CHECK(mr->hi >= 8.0);  // clique-cover certificate; 8 needs the A - I block

  Rational af = r.find("alpha_f")->exact;
  CHECK(af == 9);
  CHECK(star->exact < Rational(8));
  CHECK(Rational(8) < af);
  const BoundEntry* th = r.find("theta");
  REQUIRE(th);
  CHECK(th->hi < 9.0 + 1e-3);   // theta(G) is close to 9 + pendant slack
  CHECK(rat_to_double(star->exact) < th->lo);  // f* beats theta here
}

TEST_CASE("report JSON carries the schema and entry kinds") {
  Graph c5 = cycle(5);
  BoundOracle oracle = make_minrank_oracle(c5, FieldSpec::prime(2));
  BoundReport r = broadcast_report(c5, {FieldSpec::prime(2)}, {oracle});
  nlohmann::json j = to_json(r);
  CHECK(j["schema_version"] == 1);
  CHECK(j["graph_id"] == r.graph_id);
  REQUIRE(j["entries"].is_array());
  bool saw_exact = false, saw_interval = false;
  for (const auto& je : j["entries"]) {
    REQUIRE(je.contains("name"));
    REQUIRE(je.contains("kind"));
    REQUIRE(je.contains("certified"));
    if (je["kind"] == "exact") {
      saw_exact = true;
      CHECK(je.contains("value"));
    }
    if (je["kind"] == "interval") {
      saw_interval = true;
      CHECK(je["lo"].get<double>() <= je["hi"].get<double>());
    }
  }
  CHECK(saw_exact);
  CHECK(saw_interval);
}

TEST_CASE("cited entries are marked uncertified in the JSON") {
  BoundReport r;
  r.graph_id = "x";
  BoundEntry e;
  e.name = "minrk";
  e.kind = BoundEntry::Kind::Cited;
  e.exact = 28;
  e.certified = false;
  e.note = "literature value";
  r.entries.push_back(e);
  nlohmann::json j = to_json(r);
  CHECK(j["entries"][0]["kind"] == "cited");
  CHECK(j["entries"][0]["certified"] == false);
  CHECK(j["entries"][0]["value"] == "28");
}

TEST_CASE("the pentagon-augmented witness separates theta from both minranks") {
  BoundReport r = bukh_cox_witness(1e-5);

  const BoundEntry* add = r.find("theta_additive");
  const BoundEntry* dir = r.find("theta_direct");
  REQUIRE(add);
  REQUIRE(dir);
  // both enclose 9 + 7 sqrt 5 and overlap each other
  double expect = 9.0 + 7 * std::sqrt(5.0);
  CHECK(add->lo <= expect + 1e-3);
  CHECK(add->hi >= expect - 1e-3);
  CHECK(std::max(add->lo, dir->lo) <= std::min(add->hi, dir->hi));

  CHECK(r.find("minrk_upper")->exact == 28);
  const BoundEntry* cited = r.find("minrk");
  REQUIRE(cited);
  CHECK(cited->kind == BoundEntry::Kind::Cited);
  CHECK_FALSE(cited->certified);

  const BoundEntry* star = r.find("minrk_F11*");
  REQUIRE(star);
  CHECK(star->exact == rat(49, 2));
  CHECK(star->bounds == "capacity+broadcast");

  // the separation itself: minrk_F* < theta < minrk
  double theta_hi = std::min(add->hi, dir->hi);
  double theta_lo = std::max(add->lo, dir->lo);
  CHECK(rat_to_double(star->exact) < theta_lo);
  CHECK(theta_hi < 28.0);

  Graph h = schlafli_complement();
  for (int i = 0; i < 7; ++i) h = disjoint_union(h, cycle(5));
  CHECK(r.find("alpha")->exact == independence_number(h));
}

TEST_CASE("chain ordering rejects a certified bound below alpha") {
  BoundReport r;
  r.graph_id = "x";
  BoundEntry alpha;
  alpha.name = "alpha";
  alpha.exact = 3;
  r.entries.push_back(alpha);
  BoundEntry bogus;
  bogus.name = "theta";
  bogus.kind = BoundEntry::Kind::Interval;
  bogus.lo = 1.0;
  bogus.hi = 2.0;  // below alpha: impossible for a genuine upper bound
  bogus.bounds = "capacity";
  r.entries.push_back(bogus);
  CHECK_THROWS_AS(detail::check_chain_order(r), std::logic_error);
}
