#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli_runner.hpp"

using namespace shellbuckle;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "shellbuckle_cli_test" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l))
    if (!l.empty()) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("classical-load") {
  const Run r = run({"classical-load", "--h", "1e-4", "--L", "3.14159265", "--E", "1", "--nu", "0.3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["closed_form"].get<double>() == doctest::Approx(7.022e-5).epsilon(1e-3));
  const double excess = j["lambda_hat"].get<double>() / j["closed_form"].get<double>() - 1.0;
  CHECK(excess >= 0.0);
  CHECK(excess <= 0.02);
  CHECK(j["config"]["h"] == 1e-4);
  CHECK(j["max_wavenumber"] == 176);
  CHECK(j["circle_n_m1"] == 13);
}

TEST_CASE("trivial-branch") {
  const Run r = run({"trivial-branch", "--E", "1", "--nu", "0.3", "--lambda", "0.1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const double b = j["b"];
  CHECK(b * (1 - b) * (2 - b) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(j["residual"].get<double>() <= 1e-12);
  CHECK(run({"trivial-branch", "--lambda", "0.5"}).code == cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({"korn", "--h-list", "1e-2", "--L", "3.14159265"}).code == cli::kUsage);
  CHECK(run({"korn", "--h-list", "", "--L", "3.14159265"}).code == cli::kUsage);
  CHECK(run({"korn", "--h-list", "1e-2,1e-3,1e-4,1e-5", "--bogus", "1"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"no-such-command"}).code == cli::kUsage);
  CHECK(run({"classical-load"}).code == cli::kUsage);
  CHECK(run({"classical-load", "--h", "abc"}).code == cli::kUsage);
  CHECK(run({"classical-load", "--h", "2"}).code == cli::kUsage);
  CHECK(run({"classical-load", "--h", "1e-3", "--nu", "0.6"}).code == cli::kUsage);
  CHECK(run({"classical-load", "--h", "1e-3", "--jobs", "0"}).code == cli::kUsage);
  CHECK(run({"classical-load", "--h", "1e-3", "--format", "xml"}).code == cli::kUsage);
  CHECK(run({"koiter-modes", "--h", "1e-4", "--m", "500"}).code == cli::kUsage);
  CHECK(run({"koiter-modes", "--h", "1e-4", "--amplitude", "0"}).code == cli::kUsage);
  CHECK(run({"fixedbc", "--h-list", "1e-4", "--alpha", "0.7"}).code == cli::kUsage);
  CHECK(run({"components", "--h-list", "1e-2,1e-3,1e-4,1e-5", "--which", "rr"}).code == cli::kUsage);
  CHECK(run({"ansatz", "--h-list", "0.0016", "--study", "limits", "--eta0", "4"}).code == cli::kUsage);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("rect-korn") != std::string::npos);
}

TEST_CASE("exit code contract") {
  CHECK(cli::exit_code(ErrorKind::Config) == 2);
  CHECK(cli::exit_code(ErrorKind::Domain) == 2);
  CHECK(cli::exit_code(ErrorKind::Solver) == 3);
  CHECK(cli::exit_code(ErrorKind::Check) == 4);
  CHECK(cli::exit_code(ErrorKind::Io) == 1);
}

TEST_CASE("koiter-modes export") {
  const fs::path d = fresh_dir("export");
  const std::string obj = (d / "out.obj").string();
  const Run r = run({"koiter-modes", "--h", "1e-4", "--m", "1", "--export", obj, "--n-theta", "48", "--n-z", "10"});
  REQUIRE(r.code == 0);
  int v = 0, f = 0;
  for (const std::string& l : lines(slurp(obj))) {
    if (l.rfind("v ", 0) == 0) ++v;
    if (l.rfind("f ", 0) == 0) ++f;
  }
  CHECK(v == 48 * 10);
  CHECK(f == 48 * 9);
  CHECK(fs::exists(d / "out.csv"));
  CHECK(json::parse(r.out)["rows"][0]["n"] == 13);

  const Run two = run({"koiter-modes", "--h", "1e-4", "--m", "1,3", "--export", obj, "--n-theta", "8", "--n-z", "3"});
  REQUIRE(two.code == 0);
  CHECK(fs::exists(d / "out_m1.obj"));
  CHECK(fs::exists(d / "out_m3.csv"));

  CHECK(run({"koiter-modes", "--h", "1e-4", "--export", "/proc/nope/x.obj"}).code == cli::kIoFailure);
}

TEST_CASE("artifacts, provenance and manifest") {
  const fs::path d = fresh_dir("runs");
  const std::vector<std::string> args{"--out", d.string(), "korn", "--h-list", "1e-2,5e-3,2e-3,1e-3"};
  const Run a = run(args);
  REQUIRE(a.code == 0);
  const Run b = run(args);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);

  const fs::path c0 = d / "korn_0000.csv", c1 = d / "korn_0001.csv";
  REQUIRE(fs::exists(c0));
  REQUIRE(fs::exists(c1));
  CHECK(slurp(c0) == slurp(c1));
  const auto csv = lines(slurp(c0));
  REQUIRE(csv.size() == 6);
  CHECK(csv[0].rfind("# config {", 0) == 0);
  CHECK(json::parse(csv[0].substr(9))["h_list"].size() == 4);
  CHECK(csv[1] == "h,K,m,n,K_over_h1.5,drift,on_boundary");
  const json fit = json::parse(slurp(d / "korn_0000_fit.json"));
  CHECK(fit["config"]["command"] == "korn");
  CHECK(fit["fit"]["points"] == 4);

  const auto m1 = lines(slurp(d / "manifest.jsonl"));
  REQUIRE(m1.size() == 2);
  const json e0 = json::parse(m1[0]);
  CHECK(e0["run"] == 0);
  CHECK(e0["exit_code"] == 0);
  CHECK(e0["version"].get<std::string>().rfind("shellbuckle ", 0) == 0);
  CHECK(e0["wall_time_s"].get<double>() >= 0.0);
  CHECK(e0["outputs"].size() == 2);

  // append-only: a third run leaves earlier lines untouched
  REQUIRE(run({"--out", d.string(), "trivial-branch", "--lambda", "0.05"}).code == 0);
  const auto m2 = lines(slurp(d / "manifest.jsonl"));
  REQUIRE(m2.size() == 3);
  CHECK(m2[0] == m1[0]);
  CHECK(m2[1] == m1[1]);
  const json tb = json::parse(slurp(d / "trivial-branch_0002.json"));
  CHECK(tb["config"]["lambda"] == 0.05);

  // global flags also work after the subcommand
  REQUIRE(run({"korn", "--h-list", "1e-2,5e-3,2e-3,1e-3", "--format", "json", "--out", d.string()}).code == 0);
  const json kj = json::parse(slurp(d / "korn_0003.json"));
  CHECK(kj["rows"].size() == 4);
  CHECK(kj["fit"]["exponent"].get<double>() > 1.0);

  const fs::path file = d / "plain_file";
  std::ofstream(file) << "x";
  CHECK(run({"--out", file.string(), "trivial-branch", "--lambda", "0.05"}).code == cli::kIoFailure);
}

TEST_CASE("rect-korn seed handling") {
  const Run a = run({"rect-korn", "--h", "0.05", "--trials", "6", "--seed", "3", "--mainest-fields", "1"});
  REQUIRE(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["violations"] == 0);
  CHECK(ja["config"]["seed_source"] == "flag");
  CHECK(ja["extremal_equality_error"].get<double>() <= 1e-8);

  ::setenv("SHELLSPEC_SEED", "3", 1);
  const Run b = run({"rect-korn", "--h", "0.05", "--trials", "6", "--seed", "99", "--mainest-fields", "1"});
  ::setenv("SHELLSPEC_SEED", "x3", 1);
  const Run bad = run({"rect-korn", "--trials", "1"});
  ::unsetenv("SHELLSPEC_SEED");
  REQUIRE(b.code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb["config"]["seed"] == 3);
  CHECK(jb["config"]["seed_source"] == "env");
  CHECK(jb["min_margin"] == ja["min_margin"]);
  CHECK(bad.code == cli::kUsage);
}

TEST_CASE("sweep commands") {
  const Run c = run({"components", "--h-list", "1e-2,5e-3,2e-3,1e-3", "--which", "tt+zz", "--format", "json"});
  REQUIRE(c.code == 0);
  const json jc = json::parse(c.out);
  for (const auto& row : jc["rows"]) CHECK(row["sup"].get<double>() <= 1.0 + 1e-9);

  const Run a = run({"ansatz", "--h-list", "0.0123456790123456790,0.0016", "--format", "json"});
  REQUIRE(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["config"]["study"] == "limits");
  CHECK(ja["rows"].size() == 6);

  const Run s = run({"ansatz", "--h-list", "0.0123456790123456790,0.00390625,0.0016,0.0001", "--stress", "hoop"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("# fit {\"ratio\"") != std::string::npos);

  const Run f = run({"fixedbc", "--h-list", "1e-4", "--variant", "full", "--format", "json"});
  REQUIRE(f.code == 0);
  CHECK(json::parse(f.out)["rows"][0]["ratio"].get<double>() == doctest::Approx(1.045821).epsilon(1e-6));
}
