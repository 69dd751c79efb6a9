#include <doctest.h>

#include <filesystem>

#include "algparity/serialize.hpp"
#include "algparity/verify.hpp"

using namespace algparity;

TEST_CASE("integers and rationals serialize as decimal strings") {
  Integer big("-98765432109876543210987654321");
  CHECK(to_json(big).get<std::string>() == "-98765432109876543210987654321");
  CHECK(integer_from_json(to_json(big)) == big);
  CHECK(integer_from_json(Json(42)) == 42);
  Rational q(Integer(-7), Integer(12));
  CHECK(rational_from_json(to_json(q)) == q);
  CHECK(to_json(q)["num"] == "-7");
  CHECK(to_json(q)["den"] == "12");
  CHECK_THROWS_AS(integer_from_json(Json("1.5")), ParseError);
}

TEST_CASE("matrices round-trip, including empty shapes") {
  IntMatrix m{{1, -2, 3}, {4, 5, -6}};
  m(0, 0) = Integer("1000000000000000000000000");
  CHECK(int_matrix_from_json(to_json(m)) == m);
  CHECK(int_matrix_from_json(Json::parse("[[1,2],[3,4]]")) == (IntMatrix{{1, 2}, {3, 4}}));
  IntMatrix empty(3, 0);
  IntMatrix back = int_matrix_from_json(to_json(empty));
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 0);
  RatMatrix r = to_rational(IntMatrix{{1, 2}});
  r(0, 1) = Rational(2, 3);
  CHECK(rat_matrix_from_json(to_json(r)) == r);
  CHECK_THROWS(int_matrix_from_json(Json::parse("[[1,2],[3]]")));
}

TEST_CASE("instances round-trip") {
  GenConfig cfg;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    cfg.seed = s;
    auto p = gen_pgroup(cfg);
    CHECK(pgroup_from_json(to_json(p)) == p);
    PairedIsogeny pi = gen_paired_isogeny(cfg);
    PairedIsogeny back = paired_isogeny_from_json(to_json(pi));
    CHECK(back.source == pi.source);
    CHECK(back.target == pi.target);
    CHECK(back.phi == pi.phi);
    CHECK(back.phi_t == pi.phi_t);
    CHECK(to_json(back).dump() == to_json(pi).dump());
    CHECK(paired_lattice_from_json(to_json(pi.source)) == pi.source);
    CHECK(glattice_from_json(to_json(pi.source.base())) == pi.source.base());
  }
}

TEST_CASE("missing adjoint is recomputed") {
  Json j = Json::parse(R"({"n": 3,
    "source": {"sigma": [[0,-1],[1,-1]], "gram": [[2,-1],[-1,2]]},
    "target": {"sigma": [[0,-1],[1,-1]], "gram": [[2,-1],[-1,2]]},
    "phi": [[-1,-1],[1,-2]]})");
  PairedIsogeny pi = paired_isogeny_from_json(j);
  CHECK(pi.source.gram() * pi.phi_t == pi.phi.transpose() * pi.target.gram());
}

TEST_CASE("invalid instances are rejected at parse time") {
  CHECK_THROWS_AS(pgroup_from_json(Json::parse(R"({"p": 3, "exponents": [1]})")), ParseError);
  CHECK_THROWS_AS(glattice_from_json(Json::parse(R"({"n": 2, "sigma": [[2]]})")), InvalidInstance);
  CHECK_THROWS(paired_lattice_from_json(Json::parse(R"({"n": 1, "sigma": [[1]], "gram": [[0]]})")));
}

TEST_CASE("group data files load") {
  auto names = builtin_group_names();
  for (const char* n : {"C2", "C3", "C2xC2", "S3", "D10", "S4"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  GroupData s3 = load_group("S3");
  CHECK(s3.group.order() == 6);
  CHECK(s3.representations.size() == 3);
  GroupData by_path = load_group((default_data_dir() / "groups" / "S3.json").string());
  CHECK(by_path.group.order() == 6);
  CHECK_THROWS(load_group("NoSuchGroup"));
  Json bad = Json::parse(R"({"name": "X", "generators": [[0, 0]]})");
  CHECK_THROWS(group_data_from_json(bad));
}

TEST_CASE("relation json round-trip") {
  GroupData s4 = load_group("S4");
  for (const auto& r : find_brauer_relations(s4.group)) {
    Json j = to_json(s4.group, r);
    CHECK(relation_from_json(s4.group, j) == r);
    CHECK(parse_relation(s4.group, j["text"].get<std::string>()) == r);
  }
}

TEST_CASE("every suite passes a short run") {
  for (const auto& name : suite_names()) {
    SuiteOptions o;
    o.seed = 3;
    o.trials = name == "chi-oracle" ? 25 : 15;
    VerifyReport r = run_suite(name, o);
    CHECK_MESSAGE(r.pass(), name << ": " << to_json(r).dump());
    CHECK(r.trials == *o.trials);
  }
  CHECK_THROWS_AS(run_suite("nope", SuiteOptions{}), InvalidInstance);
  CHECK_FALSE(is_suite("nope"));
}

TEST_CASE("suite reports are reproducible and independent of the job count") {
  SuiteOptions o;
  o.seed = 17;
  o.trials = 30;
  std::string one = to_json(run_suite("prop35", o)).dump();
  o.jobs = 4;
  std::string four = to_json(run_suite("prop35", o)).dump();
  CHECK(one == four);
  CHECK(one.find("wall") == std::string::npos);
  CHECK(to_json(run_suite("prop35", o), true).dump().find("wall_seconds") != std::string::npos);
}

TEST_CASE("generated instances check exactly as in the suite run") {
  SuiteOptions o;
  o.seed = 5;
  for (const auto& name : suite_names()) {
    Json inst = generate_instance(name, o, 2);
    CHECK(generate_instance(name, o, 2).dump() == inst.dump());
    CHECK(check_instance(name, inst).pass);
  }
}

TEST_CASE("a crafted failure replays to itself") {
  // x -> 2x on Z/5 is an automorphism of order 4
  TrialFailure f;
  f.trial = 7;
  f.seed = 123;
  f.instance = Json::parse(R"({"p": "5", "exponents": [1], "action": [[2]]})");
  TrialOutcome outcome = check_instance("lemma23", f.instance);
  CHECK_FALSE(outcome.pass);
  f.detail = outcome.detail;

  Json report{{"suite", "lemma23"}, {"seed", "1"}, {"failures", Json::array({to_json(f)})}};
  VerifyReport again = replay(report);
  REQUIRE(again.failures.size() == 1);
  CHECK(to_json(again.failures.front()).dump() == to_json(f).dump());

  Json single = to_json(f);
  single["suite"] = "lemma23";
  CHECK(replay(single).failures.size() == 1);

  // an entry that no longer fails drops out
  Json fixed = report;
  fixed["failures"][0]["instance"]["action"] = Json::parse("[[4]]");
  CHECK(replay(fixed).failures.empty());

  CHECK_THROWS_AS(replay(Json::parse(R"({"failures": []})")), ParseError);
}

TEST_CASE("json files") {
  auto path = std::filesystem::temp_directory_path() / "algparity_test_io.json";
  Json j{{"a", 1}, {"b", Json::array({"x"})}};
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), ParseError);
}
