#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "selfbind/cli.hpp"
#include "selfbind/dataset.hpp"

using selfbind::Json;
namespace cli = selfbind::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "selfbind_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors") {
  const auto none = run({});
  CHECK(none.code == cli::kUsageError);
  CHECK(none.err.find("Usage") != std::string::npos);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"threshold", "--species", "Xe"}).code == cli::kUsageError);
  CHECK(run({"threshold", "--species", "Na", "--static", "--detuned"}).code == cli::kUsageError);
  CHECK(run({"gpe", "--ratio", "1.5", "--intensity", "3000"}).code == cli::kUsageError);
  CHECK(run({"fig1b", "--ratios", "1:x:2"}).code == cli::kUsageError);
  CHECK(run({"fig1b", "--format", "xml"}).code == cli::kUsageError);
  CHECK(run({"threshold", "--species", "Rb87", "--detuned"}).code == cli::kUsageError);
}

TEST_CASE("numerical failures exit with 1") {
  const auto r = run({"losses", "--ratio", "0.5"});
  CHECK(r.code == cli::kNumericalFailure);
  CHECK(r.err.find("self-bound") != std::string::npos);
  CHECK(run({"gpe", "--ratio", "1.5", "--n", "200", "--max-iter", "2"}).code == cli::kNumericalFailure);
  CHECK(run({"fig1b", "-o", "/nonexistent/dir/out.csv"}).code == cli::kNumericalFailure);
}

TEST_CASE("threshold report") {
  const auto r = run({"threshold", "--species", "Na", "--static"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["I0_W_per_cm2"].get<double>() == doctest::Approx(5.65e9).epsilon(0.03));
  CHECK(j["polarizability"] == "static");
  const auto d = Json::parse(run({"threshold"}).out);
  CHECK(d["polarizability"] == "detuned");
  CHECK(d["I0_W_per_m2"].get<double>() == doctest::Approx(2620.0).epsilon(0.03));
}

TEST_CASE("fig1b widths decrease") {
  const auto r = run({"fig1b", "--species", "Na", "--ratios", "1.1:5:0.1"});
  REQUIRE(r.code == cli::kOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == std::vector<std::string>{"ratio", "w_star", "R_rms_over_lambda", "bound"});
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));
  CHECK(std::stod(rows.back()[0]) == doctest::Approx(5.0));
  // at least 12 significant digits, '.' separator
  CHECK(rows[1][1].find('.') != std::string::npos);
  CHECK(rows[1][1].size() >= std::string("7.26278670884e-01").size());
}

TEST_CASE("outputs are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"fig1a", "--points", "50"}, {"losses"}, {"phase-map", "--nx", "5", "--ny", "5"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
  }
  const auto p1 = scratch("fig2a.csv"), p2 = scratch("fig2b.csv");
  CHECK(run({"fig2", "-o", p1.string()}).code == cli::kOk);
  CHECK(run({"fig2", "-o", p2.string()}).code == cli::kOk);
  CHECK(slurp(p1) == slurp(p2));
  const auto rows = parse_csv(slurp(p1));
  CHECK(rows[0] == std::vector<std::string>{"lambda_m", "N_low", "N_high"});
  CHECK(rows.size() == 21);
}

TEST_CASE("empty dataset gives a header-only CSV") {
  selfbind::Table t;
  t.columns = {"a", "b"};
  std::ostringstream out;
  selfbind::write_csv(t, out);
  CHECK(out.str() == "a,b\n");
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK(selfbind::format_number(0.1) == "1.00000000000000e-01");
}

TEST_CASE("json output keeps key order") {
  const auto r = run({"losses", "--n", "40"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.begin().key() == "species");
  CHECK(j["gamma_ray_per_s"].get<double>() == doctest::Approx(1.58e4).epsilon(0.05));
  const auto table = Json::parse(run({"fig1b", "--ratios", "1.5", "--format", "json"}).out);
  CHECK(table["columns"][0] == "ratio");
}

TEST_CASE("config file preloads flags, command line wins") {
  const auto cfg = scratch("run.ini");
  std::ofstream(cfg) << "fig1b.ratios = 1.1,1.3\n";
  const auto a = parse_csv(run({"--config", cfg.string(), "fig1b"}).out);
  REQUIRE(a.size() == 3);
  CHECK(std::stod(a[2][0]) == doctest::Approx(1.3));
  const auto b = parse_csv(run({"--config", cfg.string(), "fig1b", "--ratios", "2"}).out);
  REQUIRE(b.size() == 2);
  CHECK(std::stod(b[1][0]) == doctest::Approx(2.0));
}

TEST_CASE("species file via flag and environment") {
  const auto file = scratch("species.txt");
  std::ofstream(file) << "name = Heavy\nmass_kg = 1e-25\na_m = 5e-9\nalpha_v_m3 = 40e-30\n";
  const auto r = run({"--species-file", file.string(), "threshold", "--species", "Heavy"});
  REQUIRE(r.code == cli::kOk);
  CHECK(Json::parse(r.out)["species"] == "Heavy");
  ::setenv("SELFBIND_SPECIES_FILE", file.string().c_str(), 1);
  CHECK(run({"threshold", "--species", "Heavy"}).code == cli::kOk);
  ::unsetenv("SELFBIND_SPECIES_FILE");
  CHECK(run({"threshold", "--species", "Heavy"}).code == cli::kUsageError);

  std::ofstream(file) << "name = Broken\nmass_kg = 1e-25\n";
  const auto bad = run({"--species-file", file.string(), "catalog"});
  CHECK(bad.code == cli::kUsageError);
  CHECK(bad.err.find("line") != std::string::npos);
}

TEST_CASE("help lists defaults") {
  const auto h = run({"losses", "--help"});
  CHECK(h.code == cli::kOk);
  CHECK(h.out.find("[1.5]") != std::string::npos);
  CHECK(h.out.find("[40]") != std::string::npos);
  const auto f = run({"fig1b", "--help"});
  CHECK(f.out.find("[1.1:5:0.1]") != std::string::npos);
  const auto g = run({"fig2", "--help"});
  CHECK(g.out.find("[20]") != std::string::npos);
}

TEST_CASE("gpe report and profile") {
  const auto prof = scratch("profile.csv");
  const auto r = run({"gpe", "--kernel", "newton", "--n", "200", "--points", "512", "--profile", prof.string()});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.contains("R_rms_m"));
  const auto rows = parse_csv(slurp(prof));
  CHECK(rows.size() == 513);
}

TEST_CASE("plot script and misc subcommands") {
  const auto data = scratch("fig1b.csv"), script = scratch("fig1b.py");
  CHECK(run({"fig1b", "--ratios", "1.5,2", "-o", data.string(), "--plot-script", script.string()}).code == cli::kOk);
  CHECK(slurp(script).find(data.filename().string()) != std::string::npos);
  CHECK(run({"catalog"}).code == cli::kOk);
  CHECK(parse_csv(run({"potential", "--points", "10"}).out).size() == 11);
  CHECK(run({"atom-count", "--lambda", "10.6e-6", "--static", "--rho", "1e16"}).code == cli::kOk);
  CHECK(run({"width-sweep", "--n", "5000", "--ratios", "1.5,3"}).code == cli::kOk);
}

TEST_CASE("ratio list parsing") {
  CHECK(cli::parse_ratio_list("1:2:0.5") == std::vector<double>{1.0, 1.5, 2.0});
  CHECK(cli::parse_ratio_list("1.1,3") == std::vector<double>{1.1, 3.0});
  CHECK(cli::parse_ratio_list("1.1:5:0.1").size() == 40);
  CHECK_THROWS(cli::parse_ratio_list("2:1:0.5"));
  CHECK_THROWS(cli::parse_ratio_list("1:2:0"));
  CHECK_THROWS(cli::parse_ratio_list(""));
}
