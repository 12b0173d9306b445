#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "allpay/cli.hpp"
#include "allpay/json_io.hpp"
#include "allpay/two_item.hpp"
#include "test_util.hpp"

using namespace allpay;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("allpay_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(std::initializer_list<std::string> args) {
  std::vector<const char*> argv = {"allpay"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("profile JSON round-trips bit-exactly") {
  AuctionProfile p = testing::profile2(5, 2, 3.5, 3.2, 4, 3);
  AuctionProfile q = profile_from_json(Json::parse(profile_to_json(p).dump()));
  CHECK(q.budgets == p.budgets);
  CHECK(q.values == p.values);
}

TEST_CASE("strategy JSON round-trips bit-exactly") {
  testing::Rng rng(4242);
  AuctionProfile p = testing::random_two_above_both(rng);
  auto [s1, s2] = solve_two_asymmetric(p);
  for (const MixedStrategy* s : {&s1, &s2}) {
    MixedStrategy r = strategy_from_json(Json::parse(strategy_to_json(*s).dump()));
    CHECK(r.owner == s->owner);
    REQUIRE(r.atoms.size() == s->atoms.size());
    REQUIRE(r.segments.size() == s->segments.size());
    for (size_t k = 0; k < r.atoms.size(); ++k) {
      CHECK(r.atoms[k].point == s->atoms[k].point);
      CHECK(r.atoms[k].prob == s->atoms[k].prob);
    }
    for (size_t k = 0; k < r.segments.size(); ++k) {
      CHECK(r.segments[k].a == s->segments[k].a);
      CHECK(r.segments[k].b == s->segments[k].b);
      CHECK(r.segments[k].prob == s->segments[k].prob);
    }
  }
}

TEST_CASE("profile JSON schema uses the documented field order") {
  std::string dumped = profile_to_json(make_profile(1, 1, {4}, {3})).dump();
  CHECK(dumped == R"({"budgets":[1.0,1.0],"values":[[4.0],[3.0]]})");
}

TEST_CASE("solve then verify round-trips through files") {
  TempDir tmp;
  write(tmp.path("profile.json"),
        R"({"budgets":[1,1],"values":[[3,3],[3,3]]})");
  CHECK(run({"solve", "--profile", tmp.path("profile.json"), "--out",
             tmp.path("out.json")}) == 0);
  CHECK(run({"verify", "--profile", tmp.path("profile.json"), "--strategies",
             tmp.path("out.json"), "--out", tmp.path("cert.json")}) == 0);
  Json cert = Json::parse(slurp(tmp.path("cert.json")));
  CHECK(cert["player1"]["pass"].get<bool>());
  CHECK(cert["player2"]["pass"].get<bool>());
  CHECK(cert["player1"]["gain"].get<double>() <= 1e-6);
}

TEST_CASE("the refusal regime exits with code 3 and a machine-readable reason") {
  TempDir tmp;
  write(tmp.path("prop1.json"), R"({"budgets":[2,2],"values":[[4],[3]]})");
  std::ostringstream captured;
  auto* old = std::cerr.rdbuf(captured.rdbuf());
  int code = run({"solve", "--profile", tmp.path("prop1.json")});
  std::cerr.rdbuf(old);
  CHECK(code == 3);
  CHECK(captured.str().rfind("NoEquilibrium:", 0) == 0);
}

TEST_CASE("an invalid construction region also exits with code 3") {
  TempDir tmp;
  write(tmp.path("bad.json"), R"({"budgets":[5,2],"values":[[6,5],[4,3]]})");
  std::ostringstream captured;
  auto* old = std::cerr.rdbuf(captured.rdbuf());
  int code = run({"solve", "--profile", tmp.path("bad.json")});
  std::cerr.rdbuf(old);
  CHECK(code == 3);
  CHECK(captured.str().rfind("ConstructionInvalid:", 0) == 0);
}

TEST_CASE("bad input exits with code 2") {
  TempDir tmp;
  write(tmp.path("junk.json"), "{not json");
  std::ostringstream captured;
  auto* old = std::cerr.rdbuf(captured.rdbuf());
  CHECK(run({"solve", "--profile", tmp.path("junk.json")}) == 2);
  CHECK(run({"solve", "--profile", tmp.path("missing.json")}) == 2);
  write(tmp.path("neg.json"), R"({"budgets":[-1,1],"values":[[4],[3]]})");
  CHECK(run({"solve", "--profile", tmp.path("neg.json")}) == 2);
  CHECK(run({"solve", "--profile", tmp.path("neg.json"), "--bogus-flag"}) == 2);
  std::cerr.rdbuf(old);
}

TEST_CASE("a failing candidate yields exit code 1") {
  TempDir tmp;
  write(tmp.path("profile.json"), R"({"budgets":[2,2],"values":[[4],[3]]})");
  write(tmp.path("candidate.json"),
        R"({"strategies":[{"owner":1,"atoms":[{"point":[2],"prob":1}],"segments":[]},)"
        R"({"owner":2,"atoms":[{"point":[2],"prob":1}],"segments":[]}]})");
  std::ostringstream captured;
  auto* old = std::cerr.rdbuf(captured.rdbuf());
  int code = run({"verify", "--profile", tmp.path("profile.json"), "--strategies",
                  tmp.path("candidate.json"), "--out", tmp.path("cert.json")});
  std::cerr.rdbuf(old);
  CHECK(code == 1);
  Json cert = Json::parse(slurp(tmp.path("cert.json")));
  CHECK(cert["player2"]["gain"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sampling an atom strategy yields identical CSV rows") {
  TempDir tmp;
  write(tmp.path("s.json"),
        R"({"owner":1,"atoms":[{"point":[2,0],"prob":1}],"segments":[]})");
  CHECK(run({"sample", "--strategies", tmp.path("s.json"), "--count", "3", "--seed", "7",
             "--out", tmp.path("s.csv")}) == 0);
  CHECK(slurp(tmp.path("s.csv")) == "x1,x2\n2,0\n2,0\n2,0\n");
}

TEST_CASE("equal seeds give byte-identical outputs, across library and binary") {
  TempDir tmp;
  write(tmp.path("profile.json"), R"({"budgets":[1,1],"values":[[3,3],[3,3]]})");
  REQUIRE(run({"solve", "--profile", tmp.path("profile.json"), "--out",
               tmp.path("out.json")}) == 0);
  for (int k = 0; k < 2; ++k)
    REQUIRE(run({"sample", "--strategies", tmp.path("out.json"), "--count", "500",
                 "--seed", "42", "--out", tmp.path("run" + std::to_string(k) + ".csv")}) == 0);
  CHECK(slurp(tmp.path("run0.csv")) == slurp(tmp.path("run1.csv")));
  CHECK(!slurp(tmp.path("run0.csv")).empty());

  std::string cmd = std::string(ALLPAY_CLI_PATH) + " sample --strategies " +
                    tmp.path("out.json") + " --count 500 --seed 42 --out " +
                    tmp.path("bin.csv") + " >/dev/null 2>&1";
  if (std::system(cmd.c_str()) == 0)
    CHECK(slurp(tmp.path("bin.csv")) == slurp(tmp.path("run0.csv")));
}

TEST_CASE("marginals CSV doubles rows at atoms") {
  TempDir tmp;
  write(tmp.path("profile.json"), R"({"budgets":[3,1],"values":[[4],[2]]})");
  REQUIRE(run({"solve", "--profile", tmp.path("profile.json"), "--out",
               tmp.path("out.json")}) == 0);
  REQUIRE(run({"marginals", "--strategies", tmp.path("out.json"), "--item", "1", "--out",
               tmp.path("m.csv")}) == 0);
  std::istringstream in(slurp(tmp.path("m.csv")));
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,F1,F2");
  int rows_at_one = 0, rows_at_zero = 0;
  while (std::getline(in, line)) {
    if (line.rfind("1,", 0) == 0) ++rows_at_one;
    if (line.rfind("0,", 0) == 0) ++rows_at_zero;
  }
  CHECK(rows_at_one == 2);   // left limit and right value at the cap atom
  CHECK(rows_at_zero == 2);  // the weak player's atom at zero
}

TEST_CASE("a strategies file listed weak-player-first still verifies") {
  TempDir tmp;
  write(tmp.path("profile.json"), R"({"budgets":[3,1],"values":[[4],[2]]})");
  REQUIRE(run({"solve", "--profile", tmp.path("profile.json"), "--out",
               tmp.path("out.json")}) == 0);
  Json sol = Json::parse(slurp(tmp.path("out.json")));
  std::swap(sol["strategies"][0], sol["strategies"][1]);
  write(tmp.path("swapped.json"), sol.dump());
  CHECK(run({"verify", "--profile", tmp.path("profile.json"), "--strategies",
             tmp.path("swapped.json"), "--out", tmp.path("cert.json")}) == 0);
}

TEST_CASE("the boundary-mass flag selects a family member") {
  TempDir tmp;
  write(tmp.path("profile.json"), R"({"budgets":[1.5,1.5],"values":[[3],[4]]})");
  REQUIRE(run({"solve", "--profile", tmp.path("profile.json"), "--boundary-mass", "0.1",
               "--out", tmp.path("out.json")}) == 0);
  Json sol = Json::parse(slurp(tmp.path("out.json")));
  CHECK(sol["strategies"][0]["atoms"][0]["prob"].get<double>() == doctest::Approx(0.1));
  CHECK(run({"verify", "--profile", tmp.path("profile.json"), "--strategies",
             tmp.path("out.json"), "--out", tmp.path("cert.json")}) == 0);
  std::ostringstream captured;
  auto* old = std::cerr.rdbuf(captured.rdbuf());
  CHECK(run({"solve", "--profile", tmp.path("profile.json"), "--boundary-mass", "0.9"}) == 2);
  std::cerr.rdbuf(old);
}

TEST_CASE("the demo runs every built-in instance") {
  CHECK(run({"demo"}) == 0);
}

TEST_SUITE_END();
