// Regenerates the fixtures/ data set: the 28-vertex worked-example graph
// (reconstructed by constrained search and filtered by the 71/9 LP
// value), its deletion script, the A - I certificate matrix over F_11,
// the oracle value table, and the rank-3 pentagon matrix over Q.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "capbound/fixture.hpp"
#include "capbound/fstar.hpp"
#include "capbound/graph_io.hpp"
#include "capbound/theta.hpp"

using namespace capbound;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);

  VertexSet part27(0, 28);
  for (int v = 0; v < 27; ++v) part27 = part27.with(v);

  Graph chosen(1);
  bool found = false;
  int tried = 0;
  fixture::Search search([&](const Graph& cand) {
    ++tried;
    Graph inner = induced_subgraph(cand, part27);
    RatMatrix ami = adjacency_matrix(inner);
    for (int i = 0; i < 27; ++i) ami.at(i, i) = -1;
    MinrankCert cert;
    cert.kind = MinrankCert::Kind::FittingMatrixRank;
    cert.matrix = ami;
    BoundOracle oracle =
        make_minrank_oracle(cand, FieldSpec::prime(11), {{part27, Rational(7), cert}});
    SubsetFamily fam = clique_family(cand);
    fam.sets.push_back(part27);
    if (fstar(cand, oracle, fam).value != rat(71, 9)) return false;
    chosen = cand;
    found = true;
    return true;
  });
  search.run();
  if (!found) {
    std::fprintf(stderr,
                 "no constraint-satisfying labeling reproduces the 71/9 value; "
                 "fixtures not written\n");
    return 1;
  }
  std::printf("accepted candidate after %d attempts\n", tried);

  Graph inner = induced_subgraph(chosen, part27);
  double theta = lovasz_theta(inner, 1e-6).upper;
  if (std::fabs(theta - 9.0) > 1e-4) {
    std::fprintf(stderr, "sanity check failed: theta(27-part) = %.6f != 9\n", theta);
    return 1;
  }

  RatMatrix ami = adjacency_matrix(inner);
  for (int i = 0; i < 27; ++i) ami.at(i, i) = -1;

  // rank-3 pentagon fitting matrix over Q: Gram matrix of vectors chosen
  // so consecutive complement-cycle pairs are orthogonal
  RatMatrix c5(5, 5);
  {
    const long vecs[5][3] = {{1, 0, 0}, {1, 1, -1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        Rational dot = 0;
        for (int k = 0; k < 3; ++k) dot += Rational(vecs[i][k]) * Rational(vecs[j][k]);
        c5.at(i, j) = dot;
      }
  }
  FittingMatrix c5fit(FieldSpec::rationals(), c5, cycle(5));
  if (minrank_upper(cycle(5), c5fit) != 3) {
    std::fprintf(stderr, "sanity check failed: pentagon matrix rank != 3\n");
    return 1;
  }

  write_file(dir + "/modified_schlafli.g", serialize_graph(chosen));
  write_file(dir + "/deletion_script.txt",
             serialize_deletion_script(chosen, fixture::paper_script(chosen)));
  write_file(dir + "/modified_schlafli_AmI_F11.mat",
             serialize_matrix(ami, FieldSpec::prime(11)));
  write_file(dir + "/oracle_table_F11.txt",
             serialize_oracle_table(
                 chosen, {{part27, Rational(7), "modified_schlafli_AmI_F11.mat"}}));
  write_file(dir + "/c5_rank3_Q.mat", serialize_matrix(c5, FieldSpec::rationals()));
  std::printf("fixtures written to %s/\n", dir.c_str());
  return 0;
}
