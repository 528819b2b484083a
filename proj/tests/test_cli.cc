#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

auto run(const std::string& args) -> RunResult {
  static int counter = 0;
  auto log = fs::temp_directory_path() /
             ("homcirc_cli_" + std::to_string(counter++) + ".log");
  std::string cmd = std::string(HOMCIRC_CLI_PATH) + " " + args + " > " +
                    log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = rc == -1 ? -1 : WEXITSTATUS(rc);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(log);
  return r;
}

auto scratch() -> fs::path {
  auto dir = fs::temp_directory_path() / "homcirc_cli_scratch";
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const char* kP3 = R"({"left":1,"right":2,"edges":[[0,0,1],[0,1,1]]})";
const char* kOnes33 =
    R"({"n":3,"m":3,"entries":[["1","1","1"],["1","1","1"],["1","1","1"]]})";

}  // namespace

TEST_CASE("synth + eval round trip") {
  auto dir = scratch();
  put(dir / "p3.json", kP3);
  put(dir / "ones.json", kOnes33);
  auto circ = (dir / "p3.circuit").string();
  auto rep = (dir / "p3.report.json").string();
  auto r = run("synth hom --pattern " + (dir / "p3.json").string() +
               " --n 3 --m 3 --out " + circ + " --report " + rep);
  REQUIRE_MESSAGE(r.status == 0, r.out);
  auto e = run("eval --circuit " + circ + " --host " +
               (dir / "ones.json").string());
  REQUIRE_MESSAGE(e.status == 0, e.out);
  CHECK(e.out.find("27/1") != std::string::npos);

  json j = json::parse(std::ifstream(rep));
  CHECK(j["version"].is_string());
  CHECK(j["circuit_digest"].is_string());
  CHECK(j["measured_size"].is_number());
}

TEST_CASE("verify agrees with the oracle") {
  auto dir = scratch();
  put(dir / "p3.json", kP3);
  auto circ = (dir / "v.circuit").string();
  run("synth hom --pattern " + (dir / "p3.json").string() +
      " --n 3 --m 3 --out " + circ);
  auto r = run("verify --circuit " + circ + " --pattern " +
               (dir / "p3.json").string() + " --mode hom --trials 10 --seed 5");
  CHECK_MESSAGE(r.status == 0, r.out);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("determinant and immanant synthesis") {
  auto dir = scratch();
  auto det = (dir / "det.circuit").string();
  auto r = run("synth determinant --n 4 --out " + det);
  REQUIRE_MESSAGE(r.status == 0, r.out);
  put(dir / "id4.json",
      R"({"n":4,"m":4,"triples":[[0,0,"1"],[1,1,"1"],[2,2,"1"],[3,3,"1"]]})");
  auto e = run("eval --circuit " + det + " --host " +
               (dir / "id4.json").string());
  CHECK(e.out.find("1/1") != std::string::npos);

  auto imm = (dir / "imm.circuit").string();
  auto r2 = run("synth immanant --lambda 3 --out " + imm);
  REQUIRE_MESSAGE(r2.status == 0, r2.out);
  put(dir / "ones3.json",
      R"({"n":3,"m":3,"entries":[["1","1","1"],["1","1","1"],["1","1","1"]]})");
  auto e2 = run("eval --circuit " + imm + " --host " +
                (dir / "ones3.json").string());
  CHECK(e2.out.find("6/1") != std::string::npos);
}

TEST_CASE("cfi and wl") {
  auto dir = scratch();
  auto g0 = (dir / "g0.json").string();
  auto g1 = (dir / "g1.json").string();
  auto r0 = run("cfi --base c4 --twist 0000 --out " + g0);
  auto r1 = run("cfi --base c4 --twist 0001 --out " + g1);
  REQUIRE(r0.status == 0);
  REQUIRE(r1.status == 0);
  json j = json::parse(std::ifstream(g0));
  CHECK(j["n"] == 8);

  auto w2 = run("wl " + g0 + " " + g1 + " --k 2");
  CHECK(w2.out.find("EQUIVALENT") != std::string::npos);
  auto w3 = run("wl " + g0 + " " + g1 + " --k 3");
  CHECK(w3.out.find("DISTINGUISHED") != std::string::npos);
}

TEST_CASE("error paths use the documented exit codes") {
  auto dir = scratch();
  put(dir / "p3.json", kP3);
  put(dir / "bad.json", "{not json");
  put(dir / "host22.json", R"({"n":2,"m":2,"entries":[["1","1"],["1","1"]]})");
  auto circ = (dir / "e.circuit").string();
  run("synth hom --pattern " + (dir / "p3.json").string() +
      " --n 3 --m 3 --out " + circ);

  // usage error: missing required option
  CHECK(run("synth hom --n 3 --m 3 --out /tmp/x").status == 1);
  // usage error: nonpositive trials
  CHECK(run("verify --circuit " + circ + " --pattern " +
            (dir / "p3.json").string() + " --mode hom --trials 0 --seed 1")
            .status == 1);
  // parse error: corrupt JSON
  CHECK(run("synth hom --pattern " + (dir / "bad.json").string() +
            " --n 3 --m 3 --out /tmp/x")
            .status == 2);
  // parse error: host dimensions do not match the circuit
  CHECK(run("eval --circuit " + circ + " --host " +
            (dir / "host22.json").string())
            .status == 2);
}
