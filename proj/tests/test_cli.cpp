#include <doctest.h>

#include <omp.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace sadisc::cli;
namespace fs = std::filesystem;

namespace {

std::string data_path(const std::string& name) { return std::string(SADISC_DATA_DIR) + "/" + name; }

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("sadisc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig make(std::string sub, std::map<std::string, std::string> params, const std::string& out,
                      std::uint64_t seed = 0) {
  return {std::move(sub), std::move(params), seed, (scratch() / out).string()};
}

int run_quiet(const ExperimentConfig& cfg) {
  std::ostringstream err;
  return run(cfg, err);
}

int run_argv(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("count writes a CSV and provenance") {
    const auto cfg = make("count", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "10,100,1000"}, {"set-file", data_path("cube2.set")}},
                          "count.csv");
    REQUIRE(run_quiet(cfg) == 0);
    const auto rows = csv_rows(slurp(cfg.output_path));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"N", "count", "slope_so_far"});
    CHECK(rows[3][1] == "1000");
    const auto prov = slurp(cfg.output_path + ".prov");
    CHECK(prov.find("config_hash=") == 0);
    CHECK(prov.find("subcommand=count") != std::string::npos);
    CHECK_FALSE(fs::exists(cfg.output_path + ".tmp"));
  }

  TEST_CASE("config hash ignores the output path") {
    auto a = make("count", {{"alpha", "golden"}, {"N", "5"}}, "a.csv");
    auto b = make("count", {{"alpha", "golden"}, {"N", "5"}}, "b.csv");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(canonical_form(a).find("a.csv") == std::string::npos);
    b.seed = 1;
    CHECK(config_hash(a) != config_hash(b));
    b.seed = 0;
    b.params["N"] = "6";
    CHECK(config_hash(a) != config_hash(b));
  }

  TEST_CASE("dioph reports the golden margin") {
    const auto cfg = make("dioph", {{"alpha", "golden"}, {"tau", "1"}, {"N", "1000"}, {"gamma", "0.38"}}, "dioph.csv");
    REQUIRE(run_quiet(cfg) == 0);
    const auto rows = csv_rows(slurp(cfg.output_path));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "WDC");
    CHECK(std::stod(rows[1][4]) == doctest::Approx(0.3819660112501051));
    CHECK(rows[1][5] == "1");
    CHECK(rows[1][7] == "true");
  }

  TEST_CASE("cover of the diagonal") {
    const auto cfg = make("cover", {{"set-file", data_path("diagonal.set")}, {"epsilon", "0.0009765625:0.0625:7"}}, "cover.csv");
    REQUIRE(run_quiet(cfg) == 0);
    const auto rows = csv_rows(slurp(cfg.output_path));
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] == rows[i][2]);
  }

  TEST_CASE("sweep total equals the sum of count runs") {
    const std::string grid = "100,1000,5000";
    const auto sweep = make("sweep", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", grid}, {"set-file", data_path("disc.set")}}, "sweep.csv");
    REQUIRE(run_quiet(sweep) == 0);
    std::int64_t sum = 0;
    for (const char* n : {"100", "1000", "5000"}) {
      const auto c = make("count", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", n}, {"set-file", data_path("disc.set")}},
                          std::string("count_") + n + ".csv");
      REQUIRE(run_quiet(c) == 0);
      sum += std::stoll(csv_rows(slurp(c.output_path))[1][1]);
    }
    const auto summary = slurp(sweep.output_path + ".summary");
    CHECK(summary.find("total: " + std::to_string(sum) + "\n") != std::string::npos);
  }

  TEST_CASE("outputs do not depend on the thread count") {
    const std::vector<ExperimentConfig> cfgs{
        make("count", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "1000:100000:3"}, {"set-file", data_path("disc.set")}}, "d_count.csv"),
        make("discrepancy", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "500,2000"}, {"family", "approx"}}, "d_disc.csv"),
        make("lowerbound", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "10000"}}, "d_lb.txt", 1),
        make("sweep", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "1000,10000,30000"}}, "d_sweep.csv", 3),
        make("dynamics", {{"spec-file", data_path("long_range.spec")}, {"mode", "badset"}, {"N", "6"}, {"N1", "4"}}, "d_bad.csv"),
    };
    const int saved = omp_get_max_threads();
    for (const auto& cfg : cfgs) {
      std::vector<std::string> outputs;
      for (int threads : {1, 3, 4}) {
        omp_set_num_threads(threads);
        run_quiet(cfg);
        outputs.push_back(slurp(cfg.output_path));
      }
      CHECK_MESSAGE(outputs[0] == outputs[1], cfg.subcommand);
      CHECK_MESSAGE(outputs[0] == outputs[2], cfg.subcommand);
      CHECK_FALSE(outputs[0].empty());
    }
    omp_set_num_threads(saved);
  }

  TEST_CASE("exit codes") {
    // Missing required input, bad values, unknown subcommand.
    CHECK(run_quiet(make("count", {{"alpha", "golden"}}, "e1.csv")) == 1);
    CHECK(run_quiet(make("count", {{"alpha", "golden"}, {"N", "-3"}, {"set-file", data_path("cube2.set")}}, "e2.csv")) == 1);
    CHECK(run_quiet(make("bogus", {}, "e3.csv")) == 1);
    CHECK(run_quiet(make("count", {{"alpha", "golden"}, {"N", "10"}, {"set-file", data_path("cube2.set")}}, "")) == 1);
    CHECK(run_quiet(make("dioph", {{"alpha", "golden"}, {"tau", "1"}, {"N", "10"}, {"b", "2"}}, "e4.csv")) == 1);
    // Set file with a syntax error.
    const auto bad = scratch() / "bad.set";
    std::ofstream(bad) << "dim 2\nclause nope >=\n";
    CHECK(run_quiet(make("cover", {{"set-file", bad.string()}, {"epsilon", "0.1"}}, "e5.csv")) == 1);
    // Computations that refuse: flagged dynamics, budget overruns.
    CHECK(run_quiet(make("dynamics", {{"spec-file", data_path("laplacian.spec")}, {"L", "50"}, {"T-grid", "1,10,100"}}, "e6.csv")) == 2);
    CHECK(run_quiet(make("discrepancy", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "20000"}, {"family", "star"}}, "e7.csv")) == 2);
    // Parser front end.
    CHECK(run_argv({"sadisc"}) == 1);
    CHECK(run_argv({"sadisc", "count", "--alpha", "golden"}) == 1);
    CHECK(run_argv({"sadisc", "count", "--nope", "1", "--out", (scratch() / "x").string()}) == 1);
    CHECK(run_argv({"sadisc", "dioph", "--alpha", "golden", "--tau", "1", "--N", "50", "--out",
                    (scratch() / "ok.csv").string()}) == 0);
  }

  TEST_CASE("alpha from a file") {
    const auto f = scratch() / "alpha.txt";
    std::ofstream(f) << "sqrt(2)\nsqrt(3)\n";
    const auto a = make("count", {{"alpha", f.string()}, {"N", "500"}, {"set-file", data_path("disc.set")}}, "af.csv");
    const auto b = make("count", {{"alpha", "sqrt(2),sqrt(3)"}, {"N", "500"}, {"set-file", data_path("disc.set")}}, "ab.csv");
    REQUIRE(run_quiet(a) == 0);
    REQUIRE(run_quiet(b) == 0);
    CHECK(slurp(a.output_path) == slurp(b.output_path));
  }

  TEST_CASE("dynamics moments output") {
    const auto cfg = make("dynamics", {{"spec-file", data_path("laplacian.spec")}, {"L", "400"}, {"T-grid", "1:50:6"}}, "dyn.csv");
    REQUIRE(run_quiet(cfg) == 0);
    const auto rows = csv_rows(slurp(cfg.output_path));
    REQUIRE(rows.size() == 7);
    CHECK(std::stod(rows[6][0]) == 50.0);
    CHECK(std::stod(rows[6][1]) == doctest::Approx(5000.0).epsilon(1e-9));
    CHECK(slurp(cfg.output_path + ".report").find("fit: ok") != std::string::npos);
  }
}
