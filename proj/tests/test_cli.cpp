// End-to-end checks of the command-line tool: exit codes, JSON shapes,
// error reporting, and sweep output determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mottcdw_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << text;
  return p;
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::string& args) {
  static int seq = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(seq) + ".txt");
  const fs::path err = scratch_dir() / ("err" + std::to_string(seq) + ".txt");
  ++seq;
  const std::string cmd = "\"" MOTTCDW_CLI "\" " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int rc = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("landau subcommand prints the landscape as json") {
  const CliRun r = run_cli("landau --ul 0.2 --k 100");
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  const json j = json::parse(r.out);
  CHECK(j["phase"] == "MI");
  REQUIRE(j["extrema"].size() == 1);
  CHECK(j["extrema"][0]["kind"] == "global-min");
  CHECK(j["extrema"][0]["theta"] == 0.0);
}

TEST_CASE("spectrum subcommand honours --no-chi") {
  const CliRun r = run_cli("spectrum --ul 0.3 --alpha 0.5 --k 40 --no-chi");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["energies"].size() == 3);
  CHECK(j["degenerate_ground"] == false);
  CHECK(j["observables"].contains("gap_10"));
  CHECK(!j["observables"].contains("fidelity_chi"));

  const CliRun rc = run_cli("spectrum --ul 0.3 --alpha 0.5 --k 40");
  const json jc = json::parse(rc.out);
  CHECK(jc["observables"]["fidelity_chi"].is_number());
  CHECK(jc["observables"]["chi_discontinuity"] == false);
}

TEST_CASE("wkb subcommand carries the barrier bookkeeping") {
  const CliRun r = run_cli("wkb --ul 0.7 --alpha 0.4 --k 100");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["phase"] == "CDW");
  CHECK(j["barrier_exists"] == true);
  REQUIRE(j["turning_points"].is_array());
  CHECK(j["turning_points"][0].get<double>() == doctest::Approx(0.0));
  CHECK(j["turning_points"][1].get<double>() == doctest::Approx(60.0));
  CHECK(j["action"].get<double>() > 0.0);
  CHECK(j["prefactor_known"] == false);

  // zero hopping on the ridge: no tunneling channel at all
  const json j0 = json::parse(run_cli("wkb --ul 0.7 --k 100").out);
  CHECK(j0["barrier_exists"] == true);
  CHECK(j0["action"].is_null());
}

TEST_CASE("oracle subcommand reports both routes when both run") {
  const CliRun r = run_cli("oracle --geometry ring --n 6");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["n_sites"] == 6);
  CHECK(j["routes_agree"] == true);
  CHECK(j["operator"]["a"] == json::array({"1", "6", "36", "144"}));
  CHECK(j["matching"]["a"] == j["operator"]["a"]);
}

TEST_CASE("oracle subcommand skips the operator route beyond its size cap") {
  const CliRun r = run_cli("oracle --geometry ring --n 14 --qmax 4");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.contains("matching"));
  CHECK(!j.contains("operator"));
  CHECK(!j.contains("routes_agree"));
  CHECK(j["matching"]["a"][1] == "14");
}

TEST_CASE("hysteresis subcommand reports both legs") {
  const CliRun r = run_cli("hysteresis --from-ul 0.2 --to-ul 0.7 --k 100");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["forward"]["initial_phase"] == "MI");
  CHECK(j["forward"]["remains_local_min"] == true);
  CHECK(j["backward"]["initial_phase"] == "CDW");
  CHECK(j["backward"]["remains_local_min"] == false);
  CHECK(j["asymmetric"] == true);
}

TEST_CASE("domain errors exit 3 with a structured stderr message") {
  const CliRun r = run_cli("spectrum --ul 0.3 --alpha 0.5 --k 7");
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  const json e = json::parse(r.err);
  CHECK(e["error"]["type"] == "domain");
  CHECK(e["error"]["message"].is_string());
}

TEST_CASE("size guards exit 4") {
  const CliRun r = run_cli("oracle --elements 12");
  CHECK(r.code == 4);
  const json e = json::parse(r.err);
  CHECK(e["error"]["type"] == "size");
}

TEST_CASE("malformed config files exit 2") {
  const fs::path bad = write_file("bad.json", "{not json at all");
  const CliRun r = run_cli("sweep --config " + bad.string());
  CHECK(r.code == 2);
  const json e = json::parse(r.err);
  CHECK(e["error"]["type"] == "parse");
}

TEST_CASE("unknown flags exit 2") {
  const CliRun r = run_cli("landau --bogus 1");
  CHECK(r.code == 2);
  const json e = json::parse(r.err);
  CHECK(e["error"]["type"] == "parse");
}

TEST_CASE("help exits 0") {
  const CliRun r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("sweep csv output is identical across worker counts") {
  const fs::path cfgp = write_file("sweep_det.json", R"({
    "u_l_range": {"min": 0.3, "max": 0.7, "steps": 5},
    "alpha_range": {"min": 0.0, "max": 1.0, "steps": 5},
    "k_sites": 20,
    "observables": ["theta", "gap", "entropy", "chi"]
  })");
  const fs::path out1 = scratch_dir() / "sweep1.csv";
  const fs::path out3 = scratch_dir() / "sweep3.csv";
  const CliRun r1 = run_cli("sweep --config " + cfgp.string() +
                            " --workers 1 --out " + out1.string());
  const CliRun r3 = run_cli("sweep --config " + cfgp.string() +
                            " --workers 3 --out " + out3.string());
  REQUIRE(r1.code == 0);
  REQUIRE(r3.code == 0);
  const json s1 = json::parse(r1.out);
  CHECK(s1["points"] == 25);
  CHECK(s1["errors"] == 0);
  CHECK(s1["out"] == out1.string());
  const std::string a = slurp(out1);
  const std::string b = slurp(out3);
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "u_l,alpha,phase,barrier_exists,barrier_height_per_site,action,"
        "theta_abs_mean,gap_10,gap_20,entropy_vn,fidelity_chi,"
        "chi_discontinuity,chi_step_consistent,flags,error");
}

TEST_CASE("sweep flags override the config file") {
  const fs::path cfgp = write_file("sweep_ovr.json", R"({
    "u_l_range": {"min": 0.3, "max": 0.4, "steps": 2},
    "alpha_range": {"min": 0.2, "max": 0.2, "steps": 1},
    "k_sites": 20,
    "observables": ["theta"],
    "format": "csv"
  })");
  const fs::path outj = scratch_dir() / "sweep_ovr_out.json";
  const CliRun r = run_cli("sweep --config " + cfgp.string() +
                           " --format json --k 24 --out " + outj.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(outj));
  CHECK(j["config"]["k_sites"] == 24);
  REQUIRE(j["points"].size() == 2);
  CHECK(j["points"][0]["observables"]["theta_abs_mean"].is_number());
  CHECK(!j["points"][0].contains("error"));
}
