#include <catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "ifslab");
    std::vector<char const*> argv;
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int                code = ifslab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  nlohmann::json parse(Run const& r) {
    return nlohmann::json::parse(r.out);
  }

}  // namespace

TEST_CASE("dim reports d_1 = log 3 / log 4 first") {
  auto r = run({"dim", "--t", "1", "--levels", "1,2,4"});
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["schema"] == "ifslab/1");
  CHECK(j.contains("tool_version"));
  CHECK(j.contains("wall_time_ms"));
  CHECK(j["resolved_config"]["t"] == "1/1");
  CHECK(j["resolved_config"]["levels"] == nlohmann::json::array({1, 2, 4}));
  auto rows = j["result"]["levels"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["d_n"].get<double>() == Catch::Approx(std::log(3.0) / std::log(4.0)).epsilon(1e-10));
  CHECK(rows[0]["C_label"] == "empirical-C");
}

TEST_CASE("dim with a subsystem") {
  auto r = run({"dim", "--t", "1", "--subsystem", "full:4"});
  REQUIRE(r.code == 0);
  auto s = parse(r)["result"]["subsystem"];
  CHECK(s["s1"].get<double>() <= s["d_N"].get<double>());
  CHECK(s["s1"].get<double>() >= s["d_N"].get<double>() - 0.125);

  CHECK(run({"dim", "--subsystem", "tilde:2", "--levels", "1,2"}).code == 0);
  CHECK(run({"dim", "--subsystem", "half:2"}).code == 2);
  CHECK(run({"dim", "--subsystem", "full:x"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"dim", "--t", "0"}).code == 2);
  CHECK(run({"dim", "--t", "abc"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"dim", "--nope"}).code == 2);
  CHECK(run({"dim", "--format", "xml"}).code == 2);
  CHECK(run({"lemmas", "--lemma", "9"}).code == 2);
  CHECK(run({"lemmas", "--lemma", "2", "--k", "8"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("the level cap is enforced") {
  CHECK(run({"dim", "--levels", "13"}).code == 2);
  setenv("IFSLAB_MAX_LEVEL", "3", 1);
  auto r = run({"dim", "--levels", "4"});
  unsetenv("IFSLAB_MAX_LEVEL");
  CHECK(r.code == 2);
  CHECK(r.err.find("IFSLAB_MAX_LEVEL") != std::string::npos);
}

TEST_CASE("freeness at t = 1") {
  auto r = run({"freeness", "--depth", "5", "--t", "1", "--samples", "100"});
  REQUIRE(r.code == 0);
  auto j = parse(r)["result"];
  CHECK(j["overlaps"].empty());
  CHECK(j["conjugacy"]["ok"] == true);
  CHECK(j["residues"]["ok"] == true);
  CHECK(j["relations"]["found"].empty());
}

TEST_CASE("lemmas") {
  auto r = run({"lemmas", "--lemma", "4", "--k", "2", "--t", "29/10"});
  REQUIRE(r.code == 0);
  auto res = parse(r)["result"]["results"];
  REQUIRE(res.size() == 1);
  CHECK(res[0]["verdict"] == true);
  CHECK(res[0]["t"] == "29/10");

  // beyond the threshold the verdict is false, which is no violation
  auto beyond = run({"lemmas", "--lemma", "4", "--k", "1", "--t", "5"});
  CHECK(beyond.code == 0);
  CHECK(parse(beyond)["result"]["results"][0]["verdict"] == false);

  auto all = run({"lemmas"});
  CHECK(all.code == 0);
  CHECK(parse(all)["result"]["results"].size() == 4);

  auto cert = run({"lemmas", "--lemma", "cert", "--n", "3", "--grid", "1"});
  CHECK(cert.code == 0);
  CHECK(parse(cert)["result"]["results"][0]["verdict"] == "INCOMPLETE");
}

TEST_CASE("measure") {
  auto r = run({"measure", "--t", "1", "--n", "6", "--s", "auto"});
  REQUIRE(r.code == 0);
  auto row = parse(r)["result"]["levels"][0];
  CHECK(row["point_cylinders"] == 64);
  CHECK(row["local_dimension_quotient"].get<double>() < row["s"].get<double>());
}

TEST_CASE("attractor with a user system and with the family") {
  auto user = run({"attractor", "--maps", "1/4,0,0,1;1/4,3/4,0,1", "--levels", "4,5,6"});
  REQUIRE(user.code == 0);
  CHECK(parse(user)["result"]["user_system"]["slope"].get<double>() == Catch::Approx(0.5).margin(0.05));

  auto fam = run({"attractor", "--t", "1", "--levels", "3,4,5", "--n", "2"});
  REQUIRE(fam.code == 0);
  auto cd = parse(fam)["result"]["common_disjoint"];
  CHECK(cd["verdict"] == "FOUND");
  CHECK(cd["match"] == true);

  CHECK(run({"attractor", "--maps", "1/4,0,0"}).code == 2);
  CHECK(run({"attractor", "--maps", "2,0,0,1", "--interval", "0:1"}).code == 2);
}

TEST_CASE("a property violation exits 3 and names the property") {
  // A level-1 bracket is far too coarse for the slope comparison.
  auto r = run({"attractor", "--levels", "3", "--n", "2", "--bracket-level", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("OSC dimension match") != std::string::npos);
  CHECK_FALSE(parse(r)["violations"].empty());
}

TEST_CASE("identical configs give identical reports up to the timing field") {
  std::vector<std::vector<std::string>> commands{
      {"dim", "--t", "1/2", "--levels", "1,3"},
      {"separation", "--t", "1", "--n", "3"},
      {"freeness", "--depth", "4", "--samples", "50", "--seed", "9"},
      {"lemmas", "--k", "2"},
      {"measure", "--n", "5"},
  };
  for (auto const& c : commands) {
    auto a = parse(run(c));
    auto b = parse(run(c));
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("csv output and --out") {
  auto r = run({"dim", "--levels", "1,2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# schema=ifslab/1", 0) == 0);
  CHECK(r.out.find("level,d_n,residual,iterations,C,C_label,lower,upper\n") != std::string::npos);
  CHECK(r.out.find("# wall_time_ms=") != std::string::npos);

  std::string path = "ifslab_cli_test_out.json";
  auto        f    = run({"pressure", "--levels", "1", "--s", "1", "--out", path});
  REQUIRE(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  auto          j = nlohmann::json::parse(in);
  CHECK(j["result"]["estimates"][0]["pressure"].get<double>() == Catch::Approx(std::log(0.75)));
  std::remove(path.c_str());
}

TEST_CASE("rational inputs are exact") {
  auto r = run({"lemmas", "--lemma", "4", "--k", "2", "--t", "2.9"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["resolved_config"]["t"] == "29/10");
}
