#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the installed command surface, driven through the
// actual binary.

namespace {

struct RunResult {
  int exitCode = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string outPath = "/tmp/induced_cli_test_out.txt";
  const std::string cmd =
      std::string(INDUCED_CLI_PATH) + " " + args + " > " + outPath + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exitCode = WEXITSTATUS(status);
  std::ifstream f(outPath);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("gen then solve round trip, deterministic output") {
  REQUIRE(run("gen --n 24 --dim 3 --seed 5 --out /tmp/induced_t1.json").exitCode == 0);
  const std::string cmd =
      "nearest-flat -i /tmp/induced_t1.json --k 2 --epsilon 0.25 --seed 9";
  const RunResult a = run(cmd);
  REQUIRE(a.exitCode == 0);
  CHECK(a.out.find("\"problem\":\"nearest-flat\"") != std::string::npos);
  CHECK(a.out.find("\"schema\":1") != std::string::npos);
  // Same seed twice: byte-identical record.
  const RunResult b = run(cmd);
  CHECK(a.out == b.out);

  // The oracle agrees within the guarantee.
  const RunResult withOracle = run(cmd + " --oracle");
  CHECK(withOracle.exitCode == 0);
  const auto rec = nlohmann::json::parse(withOracle.out);
  const double ratio = rec["oracle"]["ratio"].get<double>();
  CHECK(ratio >= 1.0 - 1e-9);
  CHECK(ratio <= 1.25 + 1e-9);
}

TEST_CASE("csv instances need an explicit query") {
  REQUIRE(run("gen --n 10 --dim 2 --seed 3 --format csv --out /tmp/induced_t2.csv").exitCode ==
          0);
  CHECK(run("nearest-flat -i /tmp/induced_t2.csv --k 2").exitCode == 3);
  CHECK(run("nearest-flat -i /tmp/induced_t2.csv --k 2 --query 0.31,0.47 --seed 1").exitCode ==
        0);
}

TEST_CASE("planted degeneracy flows through the audit") {
  REQUIRE(run("gen --n 9 --dim 2 --seed 8 --generator planted-degenerate --out "
              "/tmp/induced_t3.json")
              .exitCode == 0);
  const RunResult audit = run("degeneracy -i /tmp/induced_t3.json --seed 2");
  CHECK(audit.exitCode == 0);
  CHECK(audit.out.find("\"degenerate\":true") != std::string::npos);
  const RunResult oracle = run("oracle -i /tmp/induced_t3.json --problem degeneracy");
  CHECK(oracle.exitCode == 0);
  CHECK(oracle.out.find("\"degenerate\":true") != std::string::npos);
}

TEST_CASE("exit codes for parse and degeneracy failures") {
  {
    std::ofstream f("/tmp/induced_t4.csv");
    f << "x0,x1\n1,2\n3\n";
  }
  CHECK(run("nearest-flat -i /tmp/induced_t4.csv --k 2 --query 0,0").exitCode == 3);

  // A duplicated point with no jitter is a degenerate instance.
  {
    std::ofstream f("/tmp/induced_t5.json");
    f << R"({"dim":2,"points":[[0.4,0.7],[0.4,0.7],[0.1,0.3],[0.9,0.2]],"query":[0.5,0.5]})";
  }
  CHECK(run("nearest-flat -i /tmp/induced_t5.json --k 2").exitCode == 2);
  CHECK(run("nearest-flat -i /tmp/induced_t5.json --k 2 --perturb 1e-7 --tolerance 1e-12")
            .exitCode == 0);
}

TEST_CASE("nearest-hyperplane and polytope dump run") {
  REQUIRE(run("gen --n 40 --dim 2 --seed 12 --out /tmp/induced_t6.json").exitCode == 0);
  const RunResult r = run("nearest-hyperplane -i /tmp/induced_t6.json --seed 4 --oracle");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("\"problem\":\"nearest-hyperplane\"") != std::string::npos);

  const RunResult q = run("polytope --dim 2 --epsilon 0.1");
  CHECK(q.exitCode == 0);
  CHECK(q.out.find("\"vertices\":[[") != std::string::npos);

  const RunResult s = run("nearest-simplex -i /tmp/induced_t1.json --k 3 --seed 2 --oracle");
  CHECK(s.exitCode == 0);
}

TEST_SUITE_END();
