#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json record() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = distspec::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("distspec_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

json strip_timestamp(json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("run record layout") {
  const auto problem = write_temp("h3.json", R"({"alphabet": 2, "n": 3, "distance": {"kind": "hamming"}, "d": 2})");
  const auto r = run({"exact", "--problem", problem, "--witness"});
  REQUIRE(r.code == 0);
  const auto j = r.record();
  CHECK(j["result"]["size"] == 4);
  CHECK(j["result"]["certified"] == true);
  CHECK(j["result"]["witness"]["words"] == json::array({"000", "110", "101", "011"}));
  CHECK(j.contains("version"));
  CHECK(j.contains("timestamp"));
  CHECK(j["command"].get<std::string>().find("exact") != std::string::npos);

  std::ifstream in(problem);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(j["input_digest"] == distspec::cli::sha256_hex(distspec::cli::sha256_hex(ss.str())));
}

TEST_CASE("digest of a known string") {
  CHECK(distspec::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("exit codes") {
  CHECK(run({"exact", "--problem", "/nonexistent/missing.json"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"reproduce", "--case", "nope"}).code == 2);
  CHECK(run({"gv", "--n", "3"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const auto bad = write_temp("bad.json", R"({"alphabet": 2, "n": )");
  const auto r = run({"exact", "--problem", bad});
  CHECK(r.code == 1);
  CHECK(r.record()["error"]["kind"] == "ParseError");

  const auto degenerate = write_temp("deg.json", R"({"alphabet": 2, "n": 2, "distance": {"kind": "hamming"}, "d": 0})");
  const auto d = run({"qp", "--problem", degenerate});
  CHECK(d.code == 1);
  CHECK(d.record()["error"]["kind"] == "DegenerateThreshold");

  const auto channel = write_temp("bad.csv", "a,b\n0.5,0.7\n");
  CHECK(run({"zero-error", "--channel", channel, "--nmax", "1"}).code == 1);
}

TEST_CASE("budget exhaustion is reported, not failed") {
  const auto problem = write_temp("h8.json", R"({"alphabet": 2, "n": 8, "distance": {"kind": "hamming"}, "d": 3})");
  const auto r = run({"exact", "--problem", problem, "--budget", "3"});
  CHECK(r.code == 0);
  CHECK(r.record()["result"]["certified"] == false);
}

TEST_CASE("subcommands") {
  const auto problem = write_temp("h3b.json", R"({"alphabet": 2, "n": 3, "distance": {"kind": "hamming"}, "d": 2})");
  auto j = run({"qp", "--problem", problem, "--restarts", "4", "--seed", "3"}).record();
  CHECK(j["result"]["reciprocal"] == 4.0);
  CHECK(j["result"]["certified"] == true);

  j = run({"verify", "--problem", problem}).record();
  CHECK(j["result"]["equal"] == true);
  CHECK(j["result"]["M_star"] == 4);

  j = run({"greedy", "--problem", problem}).record();
  CHECK(j["result"]["code"]["size"] == 4);
  CHECK(j["result"]["certificate"]["valid"] == true);
  const auto dist = write_temp("p.json", R"({"support": [0, 7]})");
  j = run({"greedy", "--problem", problem, "--dist", dist, "--rule", "max"}).record();
  CHECK(j["result"]["code"]["size"] == 2);
  CHECK(run({"greedy", "--problem", problem, "--dist", "/nonexistent.json"}).code == 2);

  j = run({"gv", "--n", "10", "--d", "3", "--q", "2"}).record();
  CHECK(std::abs(j["result"]["value"].get<double>() - 1024.0 / 56) < 1e-9);

  j = run({"example", "--which", "3", "--n", "4", "--d", "3"}).record();
  CHECK(j["result"]["bounds"][1]["value"] == 6.0);
  j = run({"example", "--which", "1", "--d", "1/2"}).record();
  CHECK(std::ceil(j["result"]["bounds"][0]["value"].get<double>()) == 3);
  j = run({"example", "--which", "2", "--d", "1/3", "--grid", "12"}).record();
  CHECK(j["result"]["grid_optimum"]["value"] == 18);

  const auto ch = write_temp("pent.csv", "y0,y1,y2,y3,y4\n.5,.5,0,0,0\n0,.5,.5,0,0\n0,0,.5,.5,0\n0,0,0,.5,.5\n.5,0,0,0,.5\n");
  j = run({"zero-error", "--channel", ch, "--nmax", "2", "--bits"}).record();
  CHECK(j["result"]["per_n"][0]["rate"] == doctest::Approx(1.0));
  CHECK(j["result"]["unit"] == "bits");

  const auto dd = write_temp("dist.json", R"({"values": [0, 1], "probs": [0.5, 0.5], "scale_n": 1})");
  j = run({"asymptotic", "rate-fn", "--dist", dd, "--a", "0.25"}).record();
  CHECK(j["result"]["I"] == doctest::Approx(0.130812035941));
  j = run({"asymptotic", "rate-fn", "--dist", dd, "--a", "2"}).record();
  CHECK(j["result"]["I"] == "inf");
  j = run({"asymptotic", "j", "--dist", dd, "--delta", "0.6"}).record();
  CHECK(j["result"]["J"] == 0.0);
  j = run({"asymptotic", "second-order", "--dist", dd, "--delta", "0.25", "--n", "8"}).record();
  CHECK(j["result"]["theta_star"] == doctest::Approx(std::log(3.0)));
  CHECK(run({"asymptotic", "second-order", "--dist", dd, "--delta", "0.6", "--n", "8"}).code == 1);
  j = run({"asymptotic", "corollary2", "--delta", "0.25", "--q", "2"}).record();
  CHECK(j["result"]["value"] == doctest::Approx(0.130812).epsilon(1e-5));
  CHECK(run({"asymptotic"}).code == 2);
}

TEST_CASE("reproduce examples") {
  auto j = run({"reproduce", "--case", "pentagon"}).record();
  CHECK(j["result"]["best_rate"] == doctest::Approx(0.8047).epsilon(1e-4));
  CHECK(j["result"]["pass"] == true);

  j = run({"reproduce", "--case", "gv-recovery", "--n", "3", "--d", "2"}).record();
  CHECK(j["result"]["gv"] == 2.0);
  CHECK(j["result"]["ud_uniform"] == 2.0);
  CHECK(j["result"]["equal"] == true);

  j = run({"reproduce", "--case", "example3", "--n", "4", "--d", "3"}).record();
  CHECK(j["result"]["exact"] == 6);
  CHECK(j["result"]["oracle"] == 6);
  CHECK(j["result"]["upper"] == 6);
  CHECK(j["result"]["pass"] == true);

  j = run({"reproduce", "--case", "theorem1-sweep"}).record();
  CHECK(j["result"]["instances"].size() == 35);
  CHECK(j["result"]["pass"] == true);

  j = run({"reproduce", "--case", "example2", "--d", "0.5"}).record();
  CHECK(j["result"]["L_star"] == 8.0);
  CHECK(j["result"]["oracle_on_grid"] == 8);
  CHECK(j["result"]["tight"] == true);
}

TEST_CASE("every reproduce case passes and is deterministic") {
  for (const char* c : {"gv-recovery", "example1", "example2", "example3", "pentagon", "theorem1-sweep", "chernoff",
                        "second-order"}) {
    CAPTURE(c);
    const auto a = run({"reproduce", "--case", c, "--seed", "7"});
    const auto b = run({"reproduce", "--case", c, "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.record()["result"]["pass"] == true);
    CHECK(strip_timestamp(a.record()).dump() == strip_timestamp(b.record()).dump());
  }
}

TEST_CASE("records are written to the results directory") {
  const auto dir = std::filesystem::temp_directory_path() / "distspec_cli_test_out";
  std::filesystem::remove_all(dir);
  const auto r = run({"gv", "--n", "4", "--d", "2", "--q", "2", "--out", dir.string(), "--pretty"});
  REQUIRE(r.code == 0);
  const auto digest = r.record()["input_digest"].get<std::string>();
  const auto file = dir / (digest + ".json");
  REQUIRE(std::filesystem::exists(file));
  std::ifstream in(file);
  CHECK(json::parse(in) == r.record());
  CHECK(r.out.find("\n  ") != std::string::npos);
}
