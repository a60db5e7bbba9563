#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capbound/cache.hpp"
#include "capbound/fixture.hpp"
#include "capbound/fstar.hpp"
#include "capbound/graph_io.hpp"
#include "capbound/index_coding.hpp"
#include "capbound/theta.hpp"

namespace capbound {

struct ReplayEnv {
  std::string fixtures_dir = "fixtures";
  ComputationCache cache = ComputationCache::from_env();
  double tolerance = 1e-7;
};

struct ReplayOutcome {
  std::string case_id;
  bool pass = false;
  std::string expected;    // what the source asserts
  std::string actual;      // what this run produced
  std::string provenance;  // where the expected value comes from
  std::string mode;        // "exact" or "interval"
  std::string detail;      // diagnostics on failure
};

struct ReplayCase {
  std::string id;
  std::string description;
  std::function<ReplayOutcome(const ReplayEnv&)> run;
};

// Theta evaluator backed by the computation cache; cached intervals are
// revalidated on read and the upper endpoint is outward-rounded like the
// plain theta oracle.
inline BoundOracle make_cached_theta_oracle(const ComputationCache& cache,
                                            double tolerance = 1e-7) {
  auto eval = [cache, tolerance](const Graph& g) -> Rational {
    std::ostringstream desc;
    desc << "theta|tol=" << tolerance << "|" << g.adjacency_key();
    std::string payload = cache.get_or_compute(
        desc.str(),
        [&] {
          ThetaResult t = lovasz_theta(g, tolerance);
          char buf[80];
          std::snprintf(buf, sizeof buf, "%.17g %.17g", t.lower, t.upper);
          return std::string(buf);
        },
        [](const std::string& p) {
          double lo, hi;
          return std::sscanf(p.c_str(), "%lf %lf", &lo, &hi) == 2 && lo <= hi && hi >= 1 - 1e-9;
        });
    double lo, hi;
    if (std::sscanf(payload.c_str(), "%lf %lf", &lo, &hi) != 2)
      throw std::logic_error("cached theta: bad payload");
    return rat_round_up(hi);
  };
  OracleFlags flags;
  flags.bounds_independence = true;
  flags.submultiplicative = true;
  return BoundOracle("theta", std::move(eval), flags);
}

namespace detail {

inline constexpr const char* kSource =
    "Hu, Tamo & Shayevitz, \"A bound on the Shannon capacity via a linear "
    "programming variation\"";

inline Graph load_validated_fixture(const std::string& fixtures_dir, std::string* problem) {
  Graph g = load_graph(fixtures_dir + "/modified_schlafli.g");
  FixtureReport rep = validate_fixture_report(g);
  if (!rep.ok) {
    std::string msg = "fixture validation failed:";
    for (const auto& v : rep.violations) msg += " [" + v + "]";
    *problem = msg;
  }
  return g;
}

inline VertexSet first_k(int k, int n) {
  VertexSet s(0, n);
  for (int v = 0; v < k; ++v) s = s.with(v);
  return s;
}

}  // namespace detail

inline std::vector<ReplayCase> replay_cases() {
  using detail::kSource;
  std::vector<ReplayCase> cases;

  cases.push_back(
      {"cycles-nhalf", "alpha_f(C_n) = n/2 for odd n up to 11", [](const ReplayEnv&) {
         ReplayOutcome out{"cycles-nhalf"};
         out.provenance = std::string(kSource) + ", Sec. 3 example (alpha_f of odd cycles)";
         out.mode = "exact";
         out.expected = "5/2 7/2 9/2 11/2";
         std::string got;
         bool ok = true;
         for (int n : {5, 7, 9, 11}) {
           Rational v = fractional_independence(cycle(n)).first;
           got += (got.empty() ? "" : " ") + rat_str(v);
           ok = ok && v == rat(n, 2);
         }
         out.actual = got;
         out.pass = ok;
         return out;
       }});

  cases.push_back(
      {"schlafli-rank", "rank(A - I) = 7 over Q and F_11 for the Schlafli complement",
       [](const ReplayEnv&) {
         ReplayOutcome out{"schlafli-rank"};
         out.provenance = std::string(kSource) + ", Sec. 2.3 example (Haemers bound)";
         out.mode = "exact";
         out.expected = "7 7";
         RatMatrix m = adjacency_matrix(schlafli_complement());
         for (int i = 0; i < 27; ++i) m.at(i, i) = -1;
         int rq = rank(m, FieldSpec::rationals());
         int r11 = rank(m, FieldSpec::prime(11));
         out.actual = std::to_string(rq) + " " + std::to_string(r11);
         out.pass = rq == 7 && r11 == 7;
         return out;
       }});

  cases.push_back(
      {"fixture-719", "f* with the minrk_F11 oracle on the 28-vertex fixture equals 71/9",
       [](const ReplayEnv& env) {
         ReplayOutcome out{"fixture-719"};
         out.provenance = std::string(kSource) + ", Sec. 3 example (value 71/9); fixture graph "
                          "reconstructed from the stated constraints and revalidated at load";
         out.mode = "exact";
         out.expected = "71/9";
         std::string problem;
         Graph g = detail::load_validated_fixture(env.fixtures_dir, &problem);
         if (!problem.empty()) {
           out.detail = problem;
           return out;
         }
         FieldSpec f11 = FieldSpec::prime(11);
         auto table = load_minrank_table(g, env.fixtures_dir + "/oracle_table_F11.txt", f11);
         BoundOracle oracle = make_minrank_oracle(g, f11, table);
         SubsetFamily fam = clique_family(g);
         fam.sets.push_back(detail::first_k(27, 28));  // T = the 27-part
         FStarResult fs = fstar(g, oracle, fam);
         out.actual = rat_str(fs.value);
         out.pass = fs.value == rat(71, 9);
         if (!out.pass)
           out.detail = "no constraint-satisfying labeling reproduces the stated value";
         return out;
       }});

  cases.push_back(
      {"geomean-244721", "optimal theta/minrk* geometric mean for the 62-vertex witness",
       [](const ReplayEnv&) {
         ReplayOutcome out{"geomean-244721"};
         out.provenance = std::string(kSource) + ", Sec. 4 example (a = 0.287291, value 24.4721)";
         out.mode = "interval";
         out.expected = "a = 0.287291 +- 1e-3, value = 24.4721 +- 1e-3";
         auto [a, v] = optimize_geometric_mean(
             {{9.0, 7.0, 1}, {std::sqrt(5.0), 2.5, 7}}, 1e-9);
         char buf[80];
         std::snprintf(buf, sizeof buf, "a = %.6f, value = %.4f", a, v);
         out.actual = buf;
         out.pass = std::fabs(a - 0.287291) <= 1e-3 && std::fabs(v - 24.4721) <= 1e-3;
         return out;
       }});

  cases.push_back(
      {"bukhcox-245", "minrk_F11*(G + 7 C_5) <= 49/2, strictly below theta",
       [](const ReplayEnv&) {
         ReplayOutcome out{"bukhcox-245"};
         out.provenance = std::string(kSource) + ", Sec. 5 remark (7 + 7*(5/2) = 24.5)";
         out.mode = "exact";
         out.expected = "49/2";
         BoundReport rep = bukh_cox_witness(1e-5);
         const BoundEntry* e = rep.find("minrk_F11*");
         const BoundEntry* up = rep.find("minrk_upper");
         out.actual = e ? rat_str(e->exact) : "(missing)";
         out.pass = e && e->exact == rat(49, 2) && up && up->exact == 28;
         if (up && up->exact != 28) out.detail = "block fitting matrix rank is not 28";
         return out;
       }});

  cases.push_back(
      {"appendix-minrk8", "11-step deletion proof plus apex matrix pin minrk(fixture) to 8",
       [](const ReplayEnv& env) {
         ReplayOutcome out{"appendix-minrk8"};
         out.provenance = std::string(kSource) + ", appendix proposition (minrk(G) = 8)";
         out.mode = "exact";
         out.expected = "alpha 7 -> 8, apex matrix rank 8";
         std::string problem;
         Graph g = detail::load_validated_fixture(env.fixtures_dir, &problem);
         if (!problem.empty()) {
           out.detail = problem;
           return out;
         }
         DeletionScript script = load_deletion_script(g, env.fixtures_dir + "/deletion_script.txt");
         if (script.steps.size() != 11) {
           out.detail = "script does not have 11 steps";
           return out;
         }
         ProofOutcome proof = replay_deletion_proof(g, script);
         std::vector<int> rvec(fixture::kResidualIndependentSet.begin(),
                               fixture::kResidualIndependentSet.end());
         VertexSet resid = fixture::label_set(rvec);
         bool lower_ok = proof.verdict == ProofOutcome::Verdict::MinrkExceedsAlpha &&
                         proof.alpha_g == 7 && proof.alpha_h == 8 &&
                         is_independent_set(proof.residual, resid);
         // upper bound: (A - I) on the 27-part plus a lone apex diagonal
         VertexSet part27 = detail::first_k(27, 28);
         RatMatrix ami = adjacency_matrix(induced_subgraph(g, part27));
         for (int i = 0; i < 27; ++i) ami.at(i, i) = -1;
         RatMatrix apex(1, 1);
         apex.at(0, 0) = 1;
         FittingMatrix fit(FieldSpec::prime(11), block_diag(ami, apex), g);
         int upper = minrank_upper(g, fit);
         std::ostringstream got;
         got << "alpha " << proof.alpha_g << " -> " << proof.alpha_h << ", apex matrix rank "
             << upper;
         out.actual = got.str();
         out.pass = lower_ok && upper == 8;
         if (!lower_ok) out.detail = proof.summary;
         return out;
       }});

  cases.push_back(
      {"theta-fixedpoint", "f* of the theta oracle reproduces theta on a random 7-vertex graph",
       [](const ReplayEnv& env) {
         ReplayOutcome out{"theta-fixedpoint"};
         out.provenance = std::string(kSource) + ", Sec. 3 proposition (theta* = theta); "
                          "test graph derived from a fixed seed";
         out.mode = "interval";
         std::mt19937_64 rng(2026);
         std::uniform_real_distribution<double> coin(0.0, 1.0);
         std::vector<std::pair<int, int>> es;
         for (int u = 0; u < 7; ++u)
           for (int v = u + 1; v < 7; ++v)
             if (coin(rng) < 0.5) es.emplace_back(u, v);
         Graph g(7, es);
         BoundOracle oracle = make_cached_theta_oracle(env.cache, env.tolerance);
         Rational star = fstar_full(g, oracle).value;
         double direct = lovasz_theta(g, env.tolerance).upper;
         double diff = std::fabs(rat_to_double(star) - direct);
         out.expected = "|theta* - theta| <= 1e-3";
         char buf[96];
         std::snprintf(buf, sizeof buf, "theta* = %.7f, theta = %.7f, diff = %.2e",
                       rat_to_double(star), direct, diff);
         out.actual = buf;
         out.pass = diff <= 1e-3;
         return out;
       }});

  return cases;
}

// Runs one case; exceptions become failures with the message in detail.
inline ReplayOutcome run_replay_case(const ReplayCase& c, const ReplayEnv& env) {
  try {
    return c.run(env);
  } catch (const std::exception& e) {
    ReplayOutcome out{c.id};
    out.detail = std::string("exception: ") + e.what();
    return out;
  }
}

}  // namespace capbound
