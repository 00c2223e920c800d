#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../oracles/oracles.hpp"
#include "fhlab/cli/cli.hpp"
#include "fhlab/constructs/constructs.hpp"
#include "fhlab/io/json_io.hpp"
#include "helpers.hpp"

using namespace fhlab;
using io::Json;
using fhlab::test::q;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Scratch directory removed at scope exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("fhlab_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& content) const {
    const auto path = (dir / name).string();
    std::ofstream(path) << content;
    return path;
  }
};

const char* kTriangle = R"({"ground":3,"sets":[[0,1],[1,2],[0,2]]})";

}  // namespace

TEST_CASE("family round trip") {
  Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_family(rng, uniform_below(rng, 8), 1 + uniform_below(rng, 9));
    const auto back = io::parse_family_text(io::family_to_json(f).dump(), "x").family;
    CHECK(back == f);
  }
  const auto labelled = constructs::build_shattered_pairs(3);
  CHECK(io::parse_family_text(io::family_to_json(labelled).dump(2), "x").family == labelled);
}

TEST_CASE("family parse errors carry the line") {
  const std::string bad = "{\n  \"ground\": 3,\n  \"sets\": [[0, 1],\n    [5]]\n}";
  CHECK_THROWS_WITH_AS(io::parse_family_text(bad, "bad.json"),
                       "bad.json:4: set 1 contains element 5 outside ground set of size 3",
                       io::InputError);
  CHECK_THROWS_WITH_AS(io::parse_family_text("{\"ground\": 3, \"sets\": [[0,", "cut.json"),
                       doctest::Contains("cut.json: [json.exception.parse_error"), io::InputError);
  CHECK_THROWS_AS(io::parse_family_text(R"({"ground": -1, "sets": []})", "x"), io::InputError);
  const auto empty = io::parse_family_text(R"({"ground": 2, "sets": []})", "x");
  CHECK(empty.family.empty());
  REQUIRE(empty.warnings.size() == 1);
  CHECK(empty.warnings[0] == "x: family has no sets");
}

TEST_CASE("rationals in JSON") {
  CHECK(io::rational_to_json(q(3, 4)) == Json{{"den", 4}, {"num", 3}});
  CHECK(io::rational_from_json(Json{{"num", 6}, {"den", 8}}) == q(3, 4));
  CHECK(io::rational_from_json(Json("3/4")) == q(3, 4));
  CHECK(io::rational_from_json(Json("0.25")) == q(1, 4));
  CHECK(io::rational_from_json(Json("-0.08")) == q(-2, 25));
  CHECK(io::rational_from_json(Json("007/010")) == q(7, 10));
  CHECK(io::rational_from_json(Json(-2)) == -2);
  CHECK_THROWS(io::rational_from_json(Json(0.5)));
  CHECK_THROWS(io::rational_from_json(Json("1/0")));
  const Rational huge(BigInt("123456789012345678901234567890"), BigInt(7));
  CHECK(io::rational_from_json(io::rational_to_json(huge)) == huge);
}

TEST_CASE("CSV flattening") {
  const Json j = {{"a", {{"b", 1}, {"c", "x,y"}}}, {"r", io::rational_to_json(q(1, 3))}};
  CHECK(io::to_csv(j) == "path,value\na.b,1\na.c,\"x,y\"\nr,1/3\n");
}

TEST_CASE("analyze and lp reports") {
  Scratch s;
  const auto tri = s.write("tri.json", kTriangle);
  const auto a = run({"analyze", "--family", tri, "--k", "2", "--alpha", "1/2", "--no-timing"});
  CHECK(a.code == 0);
  const auto report = Json::parse(a.out);
  CHECK(report["schema"] == "fhlab.analyze/1");
  CHECK(io::rational_from_json(report["result"]["fhp"]["best_beta"]) == q(2, 3));
  CHECK_FALSE(report.contains("runtime_ms"));
  CHECK(Json::parse(run({"analyze", "--family", tri}).out).contains("runtime_ms"));

  const auto lp = Json::parse(run({"lp", "--family", tri, "--no-timing"}).out);
  CHECK(io::rational_from_json(lp["result"]["intersection_number"]["value"]) == q(2, 3));
  CHECK(io::rational_from_json(lp["result"]["fractional_transversal"]["tau_star"]) == q(3, 2));
  CHECK(lp["result"]["fractional_transversal"]["integer_tau"] == 2);
  CHECK(lp["result"]["duality"]["holds"] == true);
}

TEST_CASE("exit codes") {
  Scratch s;
  const auto tri = s.write("tri.json", kTriangle);
  const auto bad = s.write("bad.json", R"({"ground": 3, "sets": [[5]]})");
  CHECK(run({"analyze", "--family", bad}).code == 2);
  CHECK(run({"analyze", "--family", (s.dir / "missing.json").string()}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze", "--family", tri, "--alpha", "0.5.5"}).code == 2);
  CHECK(run({"analyze", "--family", tri, "--cap-n", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  const auto pk = run({"analyze", "--family", s.write("two.json", R"({"ground":2,"sets":[[0],[1]]})"),
                       "--p", "2", "--pk-k", "2", "--no-timing"});
  CHECK(pk.code == 1);
  CHECK(Json::parse(pk.out)["exit_code"] == 1);
}

TEST_CASE("determinism and output files") {
  Scratch s;
  const auto tri = s.write("tri.json", kTriangle);
  const std::vector<std::string> args{"construct", "random", "--members", "8", "--ground", "6",
                                      "--seed", "42", "--no-timing"};
  CHECK(run(args).out == run(args).out);
  const auto out = (s.dir / "r.json").string();
  auto with_file = args;
  with_file.insert(with_file.end(), {"-o", out});
  CHECK(run(with_file).code == 0);
  CHECK(io::read_file(out) == run(args).out);
  CHECK_FALSE(fs::exists(out + ".tmp"));
  const auto built = io::parse_family_file(out);
  CHECK(built.family.size() == 8);
  CHECK(built.provenance["seed"] == 42);
  const auto csv = run({"lp", "--family", tri, "--format", "csv", "--no-timing"});
  CHECK(csv.out.rfind("path,value\n", 0) == 0);
  CHECK(csv.out.find("result.fractional_transversal.tau_star,3/2\n") != std::string::npos);
}

TEST_CASE("construct block matches the library") {
  const auto r = run({"construct", "block", "--k", "2", "--r", "3", "--m", "4", "--gamma", "1",
                      "--pprime", "4", "--no-timing"});
  CHECK(r.code == 0);
  const auto parsed = io::parse_family_text(r.out, "stdout");
  constructs::BlockParams p;
  p.r = 3;
  p.m = 4;
  p.p_prime = 4;
  CHECK(parsed.family == constructs::build_block_counterexample(p));
  CHECK(parsed.provenance["construction"] == "block");
}

TEST_CASE("batch runner") {
  Scratch s;
  const auto tri = s.write("tri.json", kTriangle);
  const auto two = s.write("two.json", R"({"ground":2,"sets":[[0],[1]]})");
  Json config = {{"jobs",
                  {{{"name", "lp"}, {"args", {"lp", "--family", tri}}, {"output", (s.dir / "lp.json").string()}},
                   {{"name", "pk"}, {"args", {"analyze", "--family", two, "--p", "2", "--pk-k", "2"}}}}}};
  const auto cfg = s.write("batch.json", config.dump());
  const auto r = run({"batch", "--config", cfg, "--no-timing"});
  CHECK(r.code == 1);
  const auto summary = Json::parse(r.out);
  CHECK(summary["schema"] == "fhlab.batch/1");
  CHECK(summary["result"]["jobs"][1]["report"]["command"] == "analyze");
  CHECK(summary["result"]["jobs"][1]["exit_code"] == 1);
  CHECK(fs::exists(s.dir / "lp.json"));
  CHECK(Json::parse(io::read_file((s.dir / "lp.json").string()))["command"] == "lp");
}
