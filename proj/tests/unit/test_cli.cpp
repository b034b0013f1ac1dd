#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "ginv/cli.hpp"

using namespace ginv;
using nlohmann::json;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    char name[] = "/tmp/ginv_cli_XXXXXX";
    const int fd = mkstemp(name);
    REQUIRE(fd >= 0);
    close(fd);
    path = name;
    std::ofstream(path) << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
  json body() const { return json::parse(out); }
};

Run run(std::vector<std::string> args, const char* seed = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err, seed);
  return {code, out.str(), err.str()};
}

const char* kDoc = R"({"field": "Q", "matrices": {
  "a": [["1", "0"], ["0", "0"]],
  "n": [["0", "1"], ["0", "0"]],
  "e": [["0", "0"], ["0", "1"]],
  "i": [["1", "0"], ["0", "1"]]}})";

}  // namespace

TEST_CASE("group inverse of a nilpotent exits 1") {
  TempFile f(kDoc);
  const Run r = run({"ginv", f.path, "--name", "n", "--kind", "group"});
  CHECK(r.code == kExitHypothesisNotMet);
  const json j = r.body();
  CHECK(j.at("status") == "hypothesis_not_met");
  CHECK(j.at("detail") == "rank(a) = 1, rank(a^2) = 0");

  const Run d = run({"ginv", f.path, "--name", "n", "--kind", "drazin"});
  CHECK(d.code == kExitOk);
  CHECK(d.body().at("result").at("index") == 2);
}

TEST_CASE("perturb") {
  TempFile f(kDoc);
  const Run r = run({"perturb", f.path, "--a", "a", "--da", "a"});
  REQUIRE(r.code == kExitOk);
  const json j = r.body();
  CHECK(j.at("command") == "perturb");
  CHECK(j.at("oracle_agrees") == true);
  CHECK(j.at("result").at("abar_sharp") == json::parse(R"([["1/2", "0"], ["0", "0"]])"));

  CHECK(run({"perturb", f.path, "--a", "a", "--da", "e"}).code == kExitHypothesisNotMet);
}

TEST_CASE("check-stable") {
  TempFile f(kDoc);
  const Run r = run({"check-stable", f.path, "--a", "a", "--da", "e"});
  REQUIRE(r.code == kExitOk);
  for (const auto& c : r.body().at("result").at("conditions")) CHECK(c == false);
}

TEST_CASE("drazin-perturb defaults") {
  TempFile f(kDoc);
  const Run r = run({"drazin-perturb", f.path, "--a", "i", "--b", "i"});
  REQUIRE(r.code == kExitOk);
  const json j = r.body().at("result");
  CHECK(j.at("l") == 1);
  CHECK(j.at("k") == 1);
  CHECK(j.at("W_equals_phi") == true);
  CHECK(run({"drazin-perturb", f.path, "--a", "n", "--b", "i", "--l", "1"}).code == kExitInputError);
}

TEST_CASE("block forms") {
  TempFile f(kDoc);
  CHECK(run({"block", f.path, "--b", "i"}).code == kExitInputError);
  const Run anti = run({"block", f.path, "--b", "i", "--c", "i", "--anti-diagonal"});
  CHECK(anti.code == kExitOk);
  const Run star = run({"block", f.path, "--b", "a", "--star", "pp"});
  CHECK(star.code == kExitOk);
  CHECK(star.body().at("result").at("blocks").at("bottom_right") == json::parse(R"([["-1", "0"], ["0", "0"]])"));
  CHECK(run({"block", f.path, "--b", "n", "--star", "ps"}).code == kExitInputError);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({"perturb", "/nonexistent/ginv.json", "--a", "a", "--da", "a"}).code == kExitInputError);
  TempFile bad("{ not json");
  CHECK(run({"perturb", bad.path, "--a", "a", "--da", "a"}).code == kExitInputError);
  TempFile f(kDoc);
  CHECK(run({"perturb", f.path, "--a", "missing", "--da", "a"}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"ginv", f.path, "--name", "a", "--kind", "moore"}).code == kExitInputError);
}

TEST_CASE("help") {
  const Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("perturb") != std::string::npos);
}

TEST_CASE("fuzz seed override") {
  const std::vector<std::string> args = {"fuzz", "--suite", "lemma21", "--trials", "5", "--seed", "1"};
  const Run plain = run(args);
  REQUIRE(plain.code == kExitOk);
  CHECK(plain.body().at("seed") == 1);
  const Run env = run(args, "99");
  CHECK(env.body().at("seed") == 99);
  CHECK(run(args, "").body().at("seed") == 1);
  CHECK(run(args, "x9").code == kExitInputError);
  CHECK(run({"fuzz", "--suite", "lemma21", "--field", "GF(8)"}).code == kExitInputError);
}
