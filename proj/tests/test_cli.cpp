#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "algparity/serialize.hpp"

#ifndef ALGPARITY_CLI_PATH
#error "ALGPARITY_CLI_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;
using algparity::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ALGPARITY_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "algparity_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("chi on Z/9 with x -> 2x") {
  auto f = scratch("z9.json", R"({"p": 3, "exponents": [2], "action": [[2]]})");
  Run r = run("chi --file " + f.string());
  CHECK(r.code == 0);
  CHECK(r.out.find('1') != std::string::npos);
  r = run("chi --json --method bruteforce --file " + f.string());
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["chi"] == "1");
}

TEST_CASE("lattice invariants") {
  auto lat = scratch("a2.json", R"({"n": 3, "sigma": [[0,-1],[1,-1]], "gram": [[2,-1],[-1,2]]})");
  Run r = run("cohomology --json --file " + lat.string());
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["h1"]["invariant_factors"] == Json::array({"3"}));
  r = run("discriminant --json --file " + lat.string());
  CHECK(r.code == 0);
  r = run("betts --json --bruteforce --p 3 --file " + lat.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("\"1\"") != std::string::npos);
  auto m = scratch("m.json", R"([[2,1],[0,3]])");
  r = run("zfun --json --file " + m.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("\"6\"") != std::string::npos);
}

TEST_CASE("verify exit codes and reports") {
  Run r = run("verify prop35 --seed 7 --trials 200 --p 3 --json");
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["suite"] == "prop35");
  CHECK(j["failures"].empty());
  CHECK(run("verify prop35 --seed 7 --trials 200 --p 3 --json --jobs 3").out == r.out);

  Run a = run("verify lemma23 --seed 9 --trials 50 --json");
  CHECK(a.code == 0);
  CHECK(run("verify lemma23 --seed 9 --trials 50 --json").out == a.out);

  CHECK(run("verify nosuch").code == 2);
  CHECK(run("verify lemma23 --p 4").code == 2);
  CHECK(run("--bogus").code == 2);
}

TEST_CASE("replaying a failure exits 1 and reproduces it") {
  auto f = scratch("fail.json",
                   R"({"suite": "lemma23", "seed": "1", "failures": [{"trial": 0, "seed": "1",
                      "instance": {"p": "5", "exponents": [1], "action": [[2]]}, "detail": {}}]})");
  Run r = run("verify lemma23 --json --replay " + f.string());
  CHECK(r.code == 1);
  Json first = Json::parse(r.out);
  REQUIRE(first["failures"].size() == 1);
  auto again = scratch("fail2.json", r.out);
  Run r2 = run("verify lemma23 --json --replay " + again.string());
  CHECK(r2.code == 1);
  CHECK(Json::parse(r2.out)["failures"] == first["failures"]);
}

TEST_CASE("invalid input exits 2") {
  auto bad = scratch("bad.json", R"({"p": 3, "exponents": [2, 1], "action": [[1, 1], [1, 1]]})");
  CHECK(run("chi --file " + bad.string()).code == 2);
  auto garbage = scratch("garbage.json", "{not json");
  CHECK(run("chi --file " + garbage.string()).code == 2);
  CHECK(run("chi --file /nonexistent/file.json").code == 2);
  CHECK(run("brauer find --group NoSuchGroup").code == 2);
  CHECK(run("brauer realize --group S3 --relation \"C2 - 1\"").code == 2);
}

TEST_CASE("brauer subcommands") {
  Run r = run("brauer find --group S3");
  CHECK(r.code == 0);
  CHECK(r.out.find("2C2 + C3 - 2S3 - 1") != std::string::npos);
  r = run("brauer subgroups --group S3 --json");
  CHECK(r.code == 0);
  r = run("brauer realize --group C2xC2 --seed 3 --json");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).contains("determinant"));
  r = run("brauer realize --group S3 --seed 1 --budget 0");
  CHECK(r.code == 1);
  r = run("brauer regulator --group S3 --rep trivial --json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"3\"") != std::string::npos);
  r = run("brauer tau --group D10 --p 5 --seed 2 --json");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["pass"] == true);
}
