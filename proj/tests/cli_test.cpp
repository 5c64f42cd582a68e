// End-to-end checks of the installed CLI: exit-code contract, round trips,
// and determinism of emitted files.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "tmsv/emit.hpp"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(TMSV_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli: exit-code contract") {
  CHECK(run("") == 2);                                  // no subcommand
  CHECK(run("frobnicate") == 2);                        // unknown subcommand
  CHECK(run("total --out /tmp/tmsv_t.csv") == 2);       // neither s nor r pair
  CHECK(run("total --s1 0.5 --out /tmp/tmsv_t.csv") == 2);
  CHECK(run("total --s1 0.5 --s2 0.6 --r1 0.1 --r2 0.2 --out /tmp/tmsv_t.csv") == 2);
  CHECK(run("total --s1 1.5 --s2 0.5 --out /tmp/tmsv_t.csv") == 2);  // s out of range
  CHECK(run("total --s1 0.5 --s2 0.6 --format yaml --out /tmp/tmsv_t.csv") == 2);
  CHECK(run("total --s1 0.5 --s2 0.6 --out /nonexistent-dir/t.csv") == 3);
  CHECK(run("total --s1 0.5 --s2 0.6 --nmax 16 --out /tmp/tmsv_t.csv") == 0);
  CHECK(run("--help") == 0);
}

TEST_CASE("cli: total with r-parameters equals tanh^2 conversion") {
  REQUIRE(run("total --r1 0.6 --r2 -0.9 --nmax 12 --out /tmp/tmsv_r.csv") == 0);
  std::ifstream is("/tmp/tmsv_r.csv");
  const auto series = tmsv::read_total_csv(is);
  REQUIRE(series.size() == 1);
  const auto expect = tmsv::total_pmf_table(tmsv::s_of_r(0.6),
                                            tmsv::s_of_r(-0.9), 12);
  for (int n = 0; n <= 12; ++n)
    CHECK(series[0].table.values[n] == expect.values[n]);
}

TEST_CASE("cli: emitted csv reloads bit-for-bit against the in-memory table") {
  REQUIRE(run("joint --r1 0.8 --r2 -0.3 --phi 0.9 --gamma 0.4 "
              "--n1max 10 --n2max 10 --out /tmp/tmsv_j.csv") == 0);
  std::ifstream is("/tmp/tmsv_j.csv");
  const tmsv::JointRows rows = tmsv::read_joint_csv(is);
  const tmsv::Pmf2D table =
      tmsv::joint_pmf_table({0.8, -0.3, 0.9, 0.4, 0.0}, 10, 10);
  REQUIRE(rows.rows.size() == 121);
  for (const auto& [n1, n2, w] : rows.rows) CHECK(w == table.at(n1, n2));
  CHECK(rows.captured_mass == table.captured_mass);
}

TEST_CASE("cli: verify quick passes and is deterministic under a fixed seed") {
  const std::string cmd = std::string(TMSV_CLI_PATH) +
                          " verify --seed 7 --level quick > /tmp/tmsv_v1.txt 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string cmd2 = std::string(TMSV_CLI_PATH) +
                           " verify --seed 7 --level quick > /tmp/tmsv_v2.txt 2>&1";
  REQUIRE(std::system(cmd2.c_str()) == 0);
  CHECK(slurp("/tmp/tmsv_v1.txt") == slurp("/tmp/tmsv_v2.txt"));
  CHECK(slurp("/tmp/tmsv_v1.txt").find("[FAIL]") == std::string::npos);
}

TEST_CASE("cli: the norm-perturbation hook trips the closed-vs-convolution check") {
  CHECK(run("verify --seed 7 --level quick --inject-norm-perturbation 1e-3") == 1);
}

TEST_CASE("cli: deterministic outputs across runs") {
  REQUIRE(run("total --s1 0.37 --s2 0.91 --nmax 40 --format json --out /tmp/tmsv_d1.json") == 0);
  REQUIRE(run("total --s1 0.37 --s2 0.91 --nmax 40 --format json --out /tmp/tmsv_d2.json") == 0);
  CHECK(slurp("/tmp/tmsv_d1.json") == slurp("/tmp/tmsv_d2.json"));

  REQUIRE(run("joint --r1 0.5 --r2 0.7 --phi 1.1 --gamma 0.2 --n1max 24 "
              "--n2max 24 --stride 2 --threads 2 --format svg --out /tmp/tmsv_d1.svg") == 0);
  REQUIRE(run("joint --r1 0.5 --r2 0.7 --phi 1.1 --gamma 0.2 --n1max 24 "
              "--n2max 24 --stride 2 --threads 1 --format svg --out /tmp/tmsv_d2.svg") == 0);
  CHECK(slurp("/tmp/tmsv_d1.svg") == slurp("/tmp/tmsv_d2.svg"));
}

TEST_CASE("cli: figure1 emits three series") {
  REQUIRE(run("figure1 --out /tmp/tmsv_f1.csv") == 0);
  std::ifstream is("/tmp/tmsv_f1.csv");
  const auto series = tmsv::read_total_csv(is);
  CHECK(series.size() == 3);
}
