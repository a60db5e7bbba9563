#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capbound/cache.hpp"
#include "capbound/combinatorics.hpp"
#include "capbound/fixture.hpp"
#include "capbound/fstar.hpp"
#include "capbound/graph_io.hpp"
#include "capbound/index_coding.hpp"
#include "capbound/minrank.hpp"
#include "capbound/replay.hpp"
#include "capbound/theta.hpp"

using namespace capbound;

namespace {

void print_interval(double lo, double hi) {
  std::printf("[%.9g, %.9g]\n", lo, hi);
}

Graph named_graph(const std::string& name, int n, std::uint64_t seed, double p) {
  if (name == "cycle") return cycle(n);
  if (name == "path") return path_graph(n);
  if (name == "complete") return complete_graph(n);
  if (name == "empty") return Graph(n);
  if (name == "schlafli") return schlafli_complement();
  if (name == "bukhcox") {
    Graph g = schlafli_complement();
    for (int i = 0; i < 7; ++i) g = disjoint_union(g, cycle(5));
    return g;
  }
  if (name == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) < p) es.emplace_back(u, v);
    return Graph(n, es);
  }
  throw CLI::ValidationError("unknown graph name: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds on Shannon capacity and broadcast rate"};
  app.require_subcommand(1);
  double tolerance = 1e-7;
  std::uint64_t seed = 0;
  app.add_option("--tolerance", tolerance, "tolerance for SDP-backed computations")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized inputs")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "write a named graph to a file");
  std::string gen_name, gen_out;
  int gen_n = 0;
  double gen_p = 0.5;
  gen->add_option("name", gen_name,
                  "cycle|path|complete|empty|random (with n), schlafli, bukhcox")
      ->required();
  gen->add_option("n", gen_n, "vertex count for parametric families");
  gen->add_option("-o,--output", gen_out, "output file")->required();
  gen->add_option("--p", gen_p, "edge probability for random graphs")->capture_default_str();

  auto add_graph_cmd = [&](const char* name, const char* help, std::string* path) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("graph", *path, "graph file")->required()->check(CLI::ExistingFile);
    return sub;
  };

  std::string alpha_path, alphaf_path, theta_path;
  auto* alpha_cmd = add_graph_cmd("alpha", "independence number", &alpha_path);
  auto* alphaf_cmd = add_graph_cmd("alphaf", "fractional independence number", &alphaf_path);
  auto* theta_cmd = add_graph_cmd("theta", "Lovasz theta certified interval", &theta_path);

  // minrank
  std::string mr_path, mr_matrix, mr_field = "Q", mr_script;
  auto* mr_cmd = add_graph_cmd("minrank", "minrank bounds over a field", &mr_path);
  mr_cmd->add_option("--matrix", mr_matrix, "fitting matrix file certifying an upper bound")
      ->check(CLI::ExistingFile);
  mr_cmd->add_option("--field", mr_field, "Q or a prime p")->capture_default_str();
  mr_cmd->add_option("--deletion-script", mr_script, "edge deletion proof script")
      ->check(CLI::ExistingFile);

  // fstar
  std::string fs_path, fs_table, fs_field = "Q", fs_family;
  bool fs_full = false;
  auto* fs_cmd = add_graph_cmd("fstar", "f* LP bound with a minrank oracle", &fs_path);
  fs_cmd->add_option("--oracle-table", fs_table, "certified oracle value table")
      ->check(CLI::ExistingFile);
  fs_cmd->add_option("--field", fs_field, "Q or a prime p")->capture_default_str();
  fs_cmd->add_option("--family", fs_family, "subset family file (default: cliques + V)")
      ->check(CLI::ExistingFile);
  fs_cmd->add_flag("--full", fs_full, "all 2^n - 1 subsets (n <= 16)");

  // product / union
  std::string bin_a, bin_b, bin_out;
  auto* prod_cmd = app.add_subcommand("product", "strong product of two graphs");
  auto* union_cmd = app.add_subcommand("union", "disjoint union of two graphs");
  for (auto* sub : {prod_cmd, union_cmd}) {
    sub->add_option("left", bin_a, "graph file")->required()->check(CLI::ExistingFile);
    sub->add_option("right", bin_b, "graph file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", bin_out, "output file")->required();
  }

  // report
  std::string rep_path;
  std::vector<std::string> rep_fields;
  auto* rep_cmd = add_graph_cmd("report", "bound report as JSON", &rep_path);
  rep_cmd->add_option("--field", rep_fields, "fields for minrank entries (repeatable)");

  // replay
  std::string replay_id;
  std::string fixtures_dir = "fixtures";
  auto* replay_cmd = app.add_subcommand("replay", "re-run recorded example computations");
  replay_cmd->add_option("case", replay_id, "case id or 'all'")->required();
  replay_cmd->add_option("--fixtures", fixtures_dir, "fixtures directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      save_graph(named_graph(gen_name, gen_n, seed, gen_p), gen_out);
      return 0;
    }
    if (*alpha_cmd) {
      std::printf("%d\n", independence_number(load_graph(alpha_path)));
      return 0;
    }
    if (*alphaf_cmd) {
      std::printf("%s\n", rat_str(fractional_independence(load_graph(alphaf_path)).first).c_str());
      return 0;
    }
    if (*theta_cmd) {
      Graph g = load_graph(theta_path);
      ComputationCache cache = ComputationCache::from_env();
      std::ostringstream desc;
      desc << "theta-interval|tol=" << tolerance << "|" << g.adjacency_key();
      std::string payload = cache.get_or_compute(desc.str(), [&] {
        ThetaResult t = lovasz_theta(g, tolerance);
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g %.17g", t.lower, t.upper);
        return std::string(buf);
      });
      double lo, hi;
      if (std::sscanf(payload.c_str(), "%lf %lf", &lo, &hi) != 2)
        throw std::runtime_error("theta: bad cache payload");
      print_interval(lo, hi);
      return 0;
    }
    if (*mr_cmd) {
      Graph g = load_graph(mr_path);
      FieldSpec field = FieldSpec::parse(mr_field);
      if (!mr_script.empty()) {
        ProofOutcome out = replay_deletion_proof(g, load_deletion_script(g, mr_script));
        std::printf("%s\n", out.summary.c_str());
        return out.verdict == ProofOutcome::Verdict::MinrkExceedsAlpha ? 0 : 1;
      }
      if (!mr_matrix.empty()) {
        auto [m, mfield] = load_matrix(mr_matrix);
        if (!(mfield == field))
          throw std::runtime_error("matrix file field does not match --field");
        std::printf("%d\n", minrank_upper(g, FittingMatrix(field, m, g)));
        return 0;
      }
      try {
        std::printf("%d\n", minrank_exact_small(g, field));
      } catch (const std::invalid_argument&) {
        int lo = independence_number(g);
        int hi = minrank_upper(g, clique_cover_fitting_matrix(g, field));
        print_interval(lo, hi);
      }
      return 0;
    }
    if (*fs_cmd) {
      Graph g = load_graph(fs_path);
      FieldSpec field = FieldSpec::parse(fs_field);
      std::vector<std::tuple<VertexSet, Rational, MinrankCert>> table;
      if (!fs_table.empty()) table = load_minrank_table(g, fs_table, field);
      BoundOracle oracle = make_minrank_oracle(g, field, table);
      SubsetFamily fam;
      if (!fs_family.empty()) {
        fam = load_subset_family(g, fs_family);
      } else {
        // table subsets join the default family so their certified
        // values actually constrain the LP
        fam = default_family(g);
        for (const auto& entry : table) fam.sets.push_back(std::get<0>(entry));
      }
      FStarResult result = fs_full ? fstar_full(g, oracle) : fstar(g, oracle, fam);
      std::printf("%s\n", rat_str(result.value).c_str());
      return 0;
    }
    if (*prod_cmd) {
      save_graph(strong_product(load_graph(bin_a), load_graph(bin_b)), bin_out);
      return 0;
    }
    if (*union_cmd) {
      save_graph(disjoint_union(load_graph(bin_a), load_graph(bin_b)), bin_out);
      return 0;
    }
    if (*rep_cmd) {
      Graph g = load_graph(rep_path);
      std::vector<FieldSpec> fields;
      for (const auto& f : rep_fields) fields.push_back(FieldSpec::parse(f));
      BoundReport report = broadcast_report(g, fields, {}, {}, tolerance);
      std::printf("%s\n", to_json(report).dump(2).c_str());
      return 0;
    }
    if (*replay_cmd) {
      ReplayEnv env;
      env.fixtures_dir = fixtures_dir;
      env.tolerance = tolerance;
      bool all_pass = true, any = false;
      for (const auto& c : replay_cases()) {
        if (replay_id != "all" && replay_id != c.id) continue;
        any = true;
        ReplayOutcome out = run_replay_case(c, env);
        if (out.pass) {
          std::printf("%s: %s\n", c.id.c_str(), out.actual.c_str());
        } else {
          all_pass = false;
          std::fprintf(stderr,
                       "%s: MISMATCH\n  expected: %s\n  actual:   %s\n  provenance: %s\n%s%s",
                       c.id.c_str(), out.expected.c_str(), out.actual.c_str(),
                       out.provenance.c_str(), out.detail.empty() ? "" : "  detail: ",
                       out.detail.empty() ? "" : (out.detail + "\n").c_str());
        }
      }
      if (!any) {
        std::fprintf(stderr, "unknown replay case: %s\n", replay_id.c_str());
        return 2;
      }
      return all_pass ? 0 : 3;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
