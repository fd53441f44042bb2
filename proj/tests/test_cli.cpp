#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gwm/cli.hpp"

using namespace gwm;
using json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/gwm_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

int run(const RunConfig& cfg) { return run_config(cfg); }

}  // namespace

TEST_CASE("complex literals") {
  CHECK(parse_complex("-1") == cplx{-1.0});
  CHECK(parse_complex("0.3") == cplx{0.3});
  CHECK(parse_complex("0+1i") == cplx{0.0, 1.0});
  CHECK(parse_complex("0.3-0.5i") == cplx{0.3, -0.5});
  CHECK(parse_complex("1e-3+2e-1i") == cplx{1e-3, 0.2});
  CHECK_THROWS_AS(parse_complex("abc"), validation_error);
  CHECK_THROWS_AS(parse_complex("1i"), validation_error);
}

TEST_CASE("configs round-trip through their flag form") {
  RunConfig moments;
  moments.subcommand = "moments";
  moments.law = "poisson";
  moments.tolls = "clog,pow:0+1i";
  moments.n_list = {64, 128};
  moments.trunc = 256;
  moments.json = true;
  CHECK(parse_args(moments.to_flags()) == moments);

  RunConfig sim;
  sim.subcommand = "simulate";
  sim.law = "geometric";
  sim.tolls = "log";
  sim.n = 100;
  sim.reps = 5000;
  sim.seed = 99;
  sim.threads = 2;
  sim.json = true;
  CHECK(parse_args(sim.to_flags()) == sim);

  RunConfig cmp;
  cmp.subcommand = "compare";
  cmp.laws = {"binary", "poisson"};
  cmp.alphas = {"-1", "0.25"};
  cmp.mu_prime = true;
  cmp.cm_order = 2;
  CHECK(parse_args(cmp.to_flags()) == cmp);

  CHECK_THROWS_AS(parse_args({"moments", "--law", "poisson", "--bogus"}),
                  validation_error);
  CHECK_THROWS_AS(parse_args({"nosuchcommand"}), validation_error);
}

TEST_CASE("oracle prints the documented scalar") {
  TempFile tmp("oracle.txt");
  RunConfig cfg;
  cfg.subcommand = "oracle";
  cfg.law = "fullbinary";
  cfg.n = 3;
  cfg.tolls = "pow:1";
  cfg.output = tmp.path;
  CHECK(run(cfg) == 0);
  CHECK(slurp(tmp.path) == "5\n");
}

TEST_CASE("constants emits the advertised JSON fields") {
  TempFile tmp("constants.json");
  RunConfig cfg;
  cfg.subcommand = "constants";
  cfg.law = "binary";
  cfg.alphas = {"-1"};
  cfg.tolls = "1";  // --t list
  cfg.json = true;
  cfg.output = tmp.path;
  CHECK(run(cfg) == 0);
  const json d = json::parse(slurp(tmp.path));
  CHECK(d["schema"] == 1);
  CHECK(std::fabs(d["mu_prime"].get<double>() - 2.0254) < 5e-5);
  CHECK(std::fabs(d["alpha_values"][0]["mu_alpha"]["re"].get<double>() -
                  0.386294) < 1e-5);
  CHECK(std::fabs(d["mu_alpha"]["re"].get<double>() - 0.386294) < 1e-5);
  CHECK(d["mean2_coeff"].contains("re"));
  CHECK(d["imag_variance"][0]["value"].get<double>() > 0.0);
  CHECK(d["imag_var"].get<double>() > 0.0);
}

TEST_CASE("moments JSON carries route and values") {
  TempFile tmp("moments.json");
  RunConfig cfg;
  cfg.subcommand = "moments";
  cfg.law = "geometric";
  cfg.tolls = "pow:1";
  cfg.n_list = {3};
  cfg.trunc = 16;
  cfg.json = true;
  cfg.output = tmp.path;
  CHECK(run(cfg) == 0);
  const json d = json::parse(slurp(tmp.path));
  CHECK(d["route"] == "series");
  CHECK(d["values"][0]["n"] == 3);
  CHECK(d["values"][0]["re"].get<double>() == doctest::Approx(5.5));
}

TEST_CASE("qn emits an attainable-size CSV") {
  TempFile tmp("qn.csv");
  RunConfig cfg;
  cfg.subcommand = "qn";
  cfg.law = "fullbinary";
  cfg.n_max = 7;
  cfg.output = tmp.path;
  CHECK(run(cfg) == 0);
  const std::string text = slurp(tmp.path);
  CHECK(text.rfind("n,q_n,asymptotic_ratio\n", 0) == 0);
  CHECK(text.find("\n3,0.125,") != std::string::npos);
  CHECK(text.find("\n2,") == std::string::npos);  // span 2: even sizes absent
}

TEST_CASE("simulate output is deterministic in seed and thread count") {
  auto run_sim = [&](unsigned threads, std::uint64_t seed,
                     const std::string& name) {
    TempFile tmp(name);
    RunConfig cfg;
    cfg.subcommand = "simulate";
    cfg.law = "poisson";
    cfg.n = 64;
    cfg.reps = 2000;
    cfg.tolls = "log";
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.json = true;
    cfg.output = tmp.path;
    REQUIRE(run(cfg) == 0);
    return slurp(tmp.path);
  };
  const std::string a = run_sim(1, 7, "sim_a.json");
  const std::string b = run_sim(2, 7, "sim_b.json");
  const std::string c = run_sim(1, 8, "sim_c.json");
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("compare emits the CSV matrix and a verdict object") {
  TempFile tmp("compare.txt");
  RunConfig cfg;
  cfg.subcommand = "compare";
  cfg.laws = {"binary", "poisson"};
  cfg.alphas = {"-1"};
  cfg.mu_prime = true;
  cfg.output = tmp.path;
  CHECK(run(cfg) == 0);
  const std::string text = slurp(tmp.path);
  CHECK(text.rfind("law,mu(-1),mu_prime\n", 0) == 0);
  const std::size_t brace = text.find('{');
  REQUIRE(brace != std::string::npos);
  const json verdict = json::parse(text.substr(brace));
  CHECK(verdict["pairs"][0]["relation"] == "pointwise-strict");
}

TEST_CASE("exit codes distinguish usage and computation errors") {
  const char* bad_usage[] = {"gwm", "moments", "--law", "poisson"};
  CHECK(run_cli(4, bad_usage) == 2);
  const char* bad_law[] = {"gwm", "qn", "--law", "nosuch", "--n-max", "4"};
  CHECK(run_cli(6, bad_law) == 1);
  const char* ok[] = {"gwm", "oracle", "--law", "binary", "--n", "2",
                      "--tolls", "log", "--output", "/tmp/gwm_test_ok.txt"};
  CHECK(run_cli(10, ok) == 0);
  std::remove("/tmp/gwm_test_ok.txt");
}

TEST_CASE("verify --suite quick reports per-criterion lines and exits 0") {
  TempFile tmp("verify.txt");
  RunConfig cfg;
  cfg.subcommand = "verify";
  cfg.suite = "quick";
  cfg.threads = 2;
  cfg.output = tmp.path;
  CHECK(run(cfg) == 0);
  const std::string text = slurp(tmp.path);
  for (int id = 1; id <= 15; ++id) {
    const std::string tag = "#" + std::to_string(id) + " ";
    CHECK_MESSAGE(text.find(tag) != std::string::npos, "criterion " << id);
  }
  CHECK(text.find("[FAIL]") == std::string::npos);
  CHECK(text.find("[SKIP] #8") != std::string::npos);
}

TEST_CASE("malformed numeric values are structured errors, not aborts") {
  const char* bad_t[] = {"gwm", "constants", "--law", "binary", "--t", "abc",
                         "--json", "--output", "/tmp/gwm_test_badt.json"};
  CHECK(run_cli(9, bad_t) == 1);
  const char* bad_alpha[] = {"gwm", "compare", "--laws", "binary,poisson",
                             "--alphas", "x"};
  CHECK(run_cli(6, bad_alpha) == 1);
  std::remove("/tmp/gwm_test_badt.json");
}
