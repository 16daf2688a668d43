#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("QSL_CLI_PATH");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_file(const std::string& name) {
  return std::string("/tmp/qsl_cli_test_") + name;
}

}  // namespace

TEST_CASE("estimate-von-neumann on the maximally mixed state") {
  std::string out = tmp_file("vn.json");
  int rc = run("estimate-von-neumann --family maximally-mixed --N 4 --eps 0.9 --delta 0.25 "
               "--mode ideal-exact --seed 7 --no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["schema"] == 1);
  CHECK(j["truth"].get<double>() == doctest::Approx(std::log(4.0)));
  CHECK(j["abs_error"].get<double>() <= j["bound"].get<double>());
  CHECK(j["params"].contains("delta_p"));
  CHECK(j["params"].contains("k"));
}

TEST_CASE("reports are byte-identical under a fixed seed") {
  std::string a = tmp_file("det_a.json"), b = tmp_file("det_b.json");
  std::string args = "estimate-von-neumann --family random-rank-r --N 4 --r 2 --eps 0.9 "
                     "--delta 0.25 --mode ideal-sampled --seed 123 --no-timestamp --out ";
  REQUIRE(run(args + a) == 0);
  REQUIRE(run(args + b) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("estimate-renyi subcommand") {
  std::string out = tmp_file("renyi.json");
  int rc = run("estimate-renyi --family maximally-mixed --N 4 --alpha 2 --eps 0.7 --delta 0.25 "
               "--mode ideal-exact --seed 3 --no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["truth"].get<double>() == doctest::Approx(std::log(4.0)));
  CHECK(j["abs_error"].get<double>() <= 0.7);
}

TEST_CASE("purity subcommand") {
  std::string out = tmp_file("purity.json");
  int rc = run("purity --family maximally-mixed --N 2 --eps 0.3 --delta 0.1 --seed 5 "
               "--no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["truth"].get<double>() == doctest::Approx(std::log(2.0)));
  CHECK(j["params"]["p0_exact"].get<double>() == doctest::Approx(0.75));
}

TEST_CASE("samplizer-scaling CSV output") {
  std::string out = tmp_file("scaling.csv");
  int rc = run("samplizer-scaling --t 1.0 --steps 4,8,16,32 --seed 2 --out " + out);
  REQUIRE(rc == 0);
  std::string csv = slurp(out);
  CHECK(csv.rfind("t,steps,diamond_lower,diamond_upper,samples,wall_ms\n", 0) == 0);
  int lines = 0;
  double prev_upper = 1e9;
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);  // header
  while (std::getline(ss, line)) {
    ++lines;
    double t, lo, up, ms;
    int steps, samples;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%d,%lf,%lf,%d,%lf", &t, &steps, &lo, &up, &samples,
                        &ms) == 6);
    CHECK(up < prev_upper);
    CHECK(lo <= up + 1e-9);
    prev_upper = up;
  }
  CHECK(lines == 4);
}

TEST_CASE("poly-certify reports a certificate") {
  std::string out = tmp_file("poly.json");
  int rc = run("poly-certify --kind log --delta 0.1 --eps 0.01 --no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["certified"] == true);
  CHECK(j["degree"].get<int>() > 0);
  for (const auto& r : j["regions"]) {
    CHECK(r["pass"] == true);
    CHECK(r["margin"].get<double>() >= 0.0);
  }
}

TEST_CASE("bounds-verify aggregates the verifiers") {
  std::string out = tmp_file("bounds.json");
  int rc = run("bounds-verify --seed 4 --no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  CHECK(j["pass"] == true);
  CHECK(j["log_eq"]["pass"] == true);
  CHECK(j["renyi_lt1"]["pass"] == true);
  CHECK(j["alpha_ordering"]["pass"] == true);
  CHECK(j["helstrom"]["pass"] == true);
  CHECK(j["mixedness_entropy_deficit"]["pass"] == true);
}

TEST_CASE("state file round trip with [re, im] entries") {
  std::string state = tmp_file("state.json");
  {
    std::ofstream f(state);
    f << R"({"matrix": [[[0.75, 0], [0, 0]], [[0, 0], [0.25, 0]]]})";
  }
  std::string out = tmp_file("state_report.json");
  int rc = run("estimate-renyi --state-file " + state +
               " --alpha 2 --eps 0.7 --delta 0.25 --mode ideal-exact --no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  double truth = -std::log(0.75 * 0.75 + 0.25 * 0.25);
  CHECK(j["truth"].get<double>() == doctest::Approx(truth));
}

TEST_CASE("spectral state form") {
  std::string state = tmp_file("spectral.json");
  {
    std::ofstream f(state);
    f << R"({"eigenvalues": [0.9, 0.1]})";
  }
  std::string out = tmp_file("spectral_report.json");
  int rc = run("estimate-von-neumann --state-file " + state +
               " --eps 0.9 --delta 0.25 --mode ideal-exact --no-timestamp --out " + out);
  REQUIRE(rc == 0);
  json j = json::parse(slurp(out));
  double truth = -(0.9 * std::log(0.9) + 0.1 * std::log(0.1));
  CHECK(j["truth"].get<double>() == doctest::Approx(truth));
}

TEST_CASE("parameter errors exit with code 2") {
  CHECK(run("estimate-von-neumann --family no-such-family --N 4 --eps 0.5 --delta 0.25") == 2);
  CHECK(run("estimate-von-neumann --family maximally-mixed --N 4 --eps 1.5 --delta 0.25") == 2);
  CHECK(run("estimate-renyi --family maximally-mixed --N 4 --alpha 1.0 --eps 0.5 --delta 0.25") ==
        2);
  CHECK(run("poly-certify --kind no-such-kind") == 2);
}
