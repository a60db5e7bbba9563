#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace {

const char* cli = CAPBOUND_CLI_PATH;
const char* fixtures_dir = CAPBOUND_FIXTURES_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with the given arguments, capturing the requested stream.
RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(cli) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[512];
  while (fgets(buf, sizeof buf, pipe)) r.out += buf;
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("capbound-cli-test-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string fixture(const std::string& name) {
  return std::string(fixtures_dir) + "/" + name;
}

}  // namespace

TEST_CASE("gen followed by the rational LP bound") {
  std::string g = tmp_file("c5.g");
  CHECK(run("gen cycle 5 -o " + g).exit_code == 0);
  RunResult r = run("alphaf " + g);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "5/2\n");
  CHECK(run("alpha " + g).out == "2\n");
}

TEST_CASE("theta prints a certified interval containing sqrt 5") {
  std::string g = tmp_file("c5.g");
  REQUIRE(run("gen cycle 5 -o " + g).exit_code == 0);
  RunResult r = run("theta " + g);
  REQUIRE(r.exit_code == 0);
  double lo = 0, hi = 0;
  REQUIRE(std::sscanf(r.out.c_str(), "[%lf, %lf]", &lo, &hi) == 2);
  // endpoints are printed with 9 significant digits, so allow that much
  double target = std::sqrt(5.0);
  CHECK(lo <= target + 1e-7);
  CHECK(hi >= target - 1e-7);
  CHECK(hi - lo <= 1e-5);
}

TEST_CASE("full fstar of the pentagon") {
  std::string g = tmp_file("c5.g");
  REQUIRE(run("gen cycle 5 -o " + g).exit_code == 0);
  RunResult r = run("fstar --full " + g);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "5/2\n");
}

TEST_CASE("fstar with the certified oracle table") {
  RunResult r = run("fstar --oracle-table " + fixture("oracle_table_F11.txt") +
                    " --field 11 " + fixture("modified_schlafli.g"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "71/9\n");
}

TEST_CASE("minrank with an explicit certificate matrix") {
  std::string g = tmp_file("c5.g");
  REQUIRE(run("gen cycle 5 -o " + g).exit_code == 0);
  RunResult r = run("minrank --matrix " + fixture("c5_rank3_Q.mat") + " " + g);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "3\n");
}

TEST_CASE("minrank replays the deletion proof") {
  RunResult r = run("minrank --deletion-script " + fixture("deletion_script.txt") + " " +
                    fixture("modified_schlafli.g"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("minrk(G) > alpha(G) = 7") != std::string::npos);
}

TEST_CASE("product writes the strong product") {
  std::string g = tmp_file("c5.g"), gg = tmp_file("c5xc5.g");
  REQUIRE(run("gen cycle 5 -o " + g).exit_code == 0);
  REQUIRE(run("product " + g + " " + g + " -o " + gg).exit_code == 0);
  CHECK(run("alpha " + gg).out == "5\n");
}

TEST_CASE("report emits schema-versioned JSON") {
  std::string g = tmp_file("c5.g");
  REQUIRE(run("gen cycle 5 -o " + g).exit_code == 0);
  RunResult r = run("report --field 2 " + g);
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  bool saw_minrk = false;
  for (const auto& e : j["entries"])
    if (e["name"] == "minrk_2") saw_minrk = true;
  CHECK(saw_minrk);
}

TEST_CASE("replay of single recorded cases") {
  std::string base = "replay --fixtures " + std::string(fixtures_dir) + " ";
  RunResult r = run(base + "fixture-719");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "fixture-719: 71/9\n");
  r = run(base + "bukhcox-245");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "bukhcox-245: 49/2\n");
  r = run(base + "cycles-nhalf");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("5/2") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("alphaf").exit_code == 2);                  // missing argument
  CHECK(run("alphaf /nonexistent-graph").exit_code == 2);  // validator failure
  CHECK(run("replay no-such-case", true).exit_code == 2);
}

TEST_CASE("computation errors exit with 1") {
  std::string g = tmp_file("c5.g");
  REQUIRE(run("gen cycle 5 -o " + g).exit_code == 0);
  // matrix is over Q but the field says F_7: rejected before any rank work
  RunResult r = run("minrank --matrix " + fixture("c5_rank3_Q.mat") + " --field 7 " + g, true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("replay mismatches exit with 3") {
  std::string empty = tmp_file("empty-fixtures");
  std::filesystem::create_directories(empty);
  RunResult r = run("replay fixture-719 --fixtures " + empty, true);
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("MISMATCH") != std::string::npos);
}
