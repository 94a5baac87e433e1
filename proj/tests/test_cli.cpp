// Drives the installed binary end to end through a shell, checking exit
// codes, output shapes, and write-backs.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "ifca/io.hpp"
#include "ifca/measures.hpp"

#include "support/reference_data.hpp"

#ifndef IFCA_CLI_PATH
#error "IFCA_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(IFCA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ifca-cli-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("validate accepts the bundled data") {
  const auto r = run_cli("validate " + testdata::middle_east_path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("6 agents") != std::string::npos);
}

TEST_CASE("validate exits 2 for a missing file") {
  const auto r = run_cli("validate /nonexistent/nope.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("validate exits 1 and names the broken rule") {
  const auto path = scratch_dir() / "broken.json";
  std::ofstream(path) << R"({
    "agents": ["a1"], "issues": ["i1", "i2"],
    "mu": {"a1": [[0.5, 0.8], [0.1, 0.5]]},
    "nu": {"a1": [[0.5, 0.3], [0.8, 0.5]]}
  })";
  const auto r = run_cli("validate " + path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("reciprocity") != std::string::npos);
}

TEST_CASE("analyze rejects sigma outside its range") {
  const auto r = run_cli("analyze " + testdata::middle_east_path() + " --sigma 0.6");
  CHECK(r.exit_code == 1);
}

TEST_CASE("analyze with manual thresholds prints the issue trisection") {
  const auto r = run_cli("analyze " + testdata::middle_east_path() +
                         " --thresholds 0.52,0.55 --level issues");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("strong {i5}") != std::string::npos);
  CHECK(r.output.find("weak {i2, i4}") != std::string::npos);
  CHECK(r.output.find("none {i1, i3}") != std::string::npos);
}

TEST_CASE("analyze json matches the reference conflict table at two decimals") {
  const auto r = run_cli("analyze " + testdata::middle_east_path() +
                         " --sigma 0.44 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  const auto& expected = testdata::bundle_conflict_table();
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b)
      CHECK(ifca::round2(doc["conflict_matrix"][a][b].get<double>()) ==
            expected[a][b]);
  CHECK(ifca::round2(doc["alpha_lower"].get<double>()) == 0.41);
  CHECK(ifca::round2(doc["alpha_upper"].get<double>()) == 0.53);
}

TEST_CASE("resolve rejects a zero pair budget") {
  const auto r = run_cli("resolve " + testdata::middle_east_path() +
                         " --kappa 0.47 --k 0 --S 10 --sigma 0.44");
  CHECK(r.exit_code == 1);
}

TEST_CASE("resolve writes every documented artifact") {
  const auto prefix = (scratch_dir() / "run").string();
  const auto r = run_cli("resolve " + testdata::middle_east_path() +
                         " --kappa 0.47 --k 2 --S 10 --sigma 0.44 --seed 7" +
                         " --output-prefix " + prefix);
  REQUIRE(r.exit_code == 0);

  const auto resolved = ifca::load_situation_file(prefix + ".resolved.json");
  CHECK(ifca::group_conflict(resolved, ifca::index_range(6), ifca::index_range(5)) <=
        0.47);

  std::ifstream trace_in(prefix + ".trace.json");
  REQUIRE(trace_in.good());
  const auto trace = nlohmann::json::parse(trace_in);
  REQUIRE_FALSE(trace["iterations"].empty());
  CHECK(trace["iterations"][0]["target"] == "a1");
  CHECK(trace["final_cm"].get<double>() <= 0.47);

  for (const char* suffix :
       {".agent-classes.csv", ".issue-classes.csv", ".agent-cm.csv", ".issue-cm.csv"}) {
    std::ifstream csv(prefix + suffix);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("iteration,", 0) == 0);
  }
}

TEST_CASE("resolve output is byte-stable for a fixed seed") {
  const auto prefix_a = (scratch_dir() / "stable-a").string();
  const auto prefix_b = (scratch_dir() / "stable-b").string();
  const std::string flags =
      " --kappa 0.47 --k 2 --S 5 --sigma 0.44 --seed 99 --output-prefix ";
  const auto ra = run_cli("resolve " + testdata::middle_east_path() + flags + prefix_a);
  const auto rb = run_cli("resolve " + testdata::middle_east_path() + flags + prefix_b);
  REQUIRE(ra.exit_code == 0);
  REQUIRE(rb.exit_code == 0);
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(prefix_a + ".trace.json") == slurp(prefix_b + ".trace.json"));
  CHECK(slurp(prefix_a + ".resolved.json") == slurp(prefix_b + ".resolved.json"));
}

TEST_CASE("resolve on an already calm situation copies the input") {
  const auto prefix = (scratch_dir() / "calm").string();
  const auto r = run_cli("resolve " + testdata::middle_east_path() +
                         " --kappa 0.9 --k 2 --S 3 --sigma 0.44 --output-prefix " +
                         prefix);
  REQUIRE(r.exit_code == 0);
  const auto resolved = ifca::load_situation_file(prefix + ".resolved.json");
  CHECK(resolved == testdata::middle_east());
  std::ifstream trace_in(prefix + ".trace.json");
  const auto trace = nlohmann::json::parse(trace_in);
  CHECK(trace["iterations"].empty());
}

TEST_CASE("resolve exits 3 when the iteration cap is hit") {
  const auto prefix = (scratch_dir() / "stuck").string();
  const auto r = run_cli("resolve " + testdata::middle_east_path() +
                         " --kappa 0.05 --k 2 --S 2 --sigma 0.44" +
                         " --max-iterations 2 --output-prefix " + prefix);
  CHECK(r.exit_code == 3);
  // the partial trace is still written
  std::ifstream trace_in(prefix + ".trace.json");
  REQUIRE(trace_in.good());
  const auto trace = nlohmann::json::parse(trace_in);
  CHECK(trace["iterations"].size() == 2);
}

TEST_CASE("sensitivity prints a monotone grid") {
  const auto r = run_cli("sensitivity " + testdata::middle_east_path() +
                         " --min 0.05 --max 0.45 --steps 41");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("sigma,alpha_lower,alpha_upper\n", 0) == 0);
  CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 42);
}

TEST_CASE("sensitivity rejects an out-of-range grid") {
  const auto r = run_cli("sensitivity " + testdata::middle_east_path() +
                         " --min 0.0 --max 0.6 --steps 5");
  CHECK(r.exit_code == 1);
}
