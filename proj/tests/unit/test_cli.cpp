#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"

#include "aclandau/cli/commands.hpp"

using namespace aclandau;
using namespace aclandau::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "aclandau_cli_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(const std::string& args) {
    const std::string cmd = std::string(ACLANDAU_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("key = value and JSON configurations resolve identically", "[cli][config]") {
    const auto flat = parse_config_text(
        "# cylinder, sigma = -1\n"
        "kind = symmetric\n"
        "sigma = -1\n"
        "L = 6   # half extent\n"
        "n = 49\n"
        "k = 30\n"
        "tol = 1e-9\n"
        "method = lanczos\n"
        "window = 2.5\n"
        "chi.1.1 = 0.5\n");
    const auto json = parse_config_text(R"({"kind": "symmetric", "sigma": -1, "L": 6, "n": 49, "k": 30,
        "tol": 1e-9, "method": "lanczos", "window": 2.5, "chi": {"1": {"1": 0.5}}})");
    CHECK(flat.to_json() == json.to_json());
    CHECK(flat.chi.coefficient(1, 1) == 0.5);
    CHECK(flat.grid().spacing() == 0.25);
    CHECK(flat.solver_options().method == SolverMethod::Lanczos);
    CHECK_NOTHROW(flat.validate());
}

TEST_CASE("spacing overrides the point count", "[cli][config]") {
    auto cfg = parse_config_text("L = 8\nh = 0.125\n");
    CHECK(cfg.grid().points_per_axis() == 129);
    CHECK(cfg.to_json()["n"] == 129);
}

TEST_CASE("configuration errors", "[cli][config]") {
    CHECK_THROWS_AS(parse_config_text("colour = blue\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("L 8\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("L = eight\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("n = 12.5\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("kind = torus\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("chi.x.y = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("{\"L\": \n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("sigma = 0\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_text("n = 10\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_text("tol = -1\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_text("L = -2\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_text("chi.2.0 = 1\n").validate(), NotHarmonic);
    CHECK_THROWS_AS(parse_config_text("levels = 0.25, 0.3\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_text("nb = 1\n").validate(), ValidationError);
}

TEST_CASE("report formatting", "[cli][report]") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2.0");
    CHECK(format_double(-1e-20) == "-9.9999999999999995e-21");
    const nlohmann::json j{{"b", 1}, {"a", {0.5, "x"}}, {"c", nlohmann::json::object()}};
    CHECK(to_report_string(j) == "{\n  \"a\": [\n    0.5,\n    \"x\"\n  ],\n  \"b\": 1,\n  \"c\": {}\n}\n");
}

TEST_CASE("spectrum command on a small box", "[cli]") {
    const auto dir = scratch("spectrum");
    REQUIRE(run("spectrum --L 4 --n 33 --k 60 --set bulk.margin=1.5 --out " + dir.string()) == exit_ok);
    const auto r = load(dir / "spectrum.json");
    CHECK(r["status"] == "ok");
    CHECK(r["config"]["L"] == 4.0);
    CHECK(r["config"]["kind"] == "symmetric");
    CHECK(r["eigenvalues"].size() == 60);
    REQUIRE(r["clusters"].size() >= 2);
    CHECK(std::abs(r["clusters"][0]["mean"].get<double>()) < 0.02);
    CHECK(std::abs(r["clusters"][1]["mean"].get<double>() - 1.0) < 0.02);
    CHECK(fs::exists(dir / "clusters.json"));
    const std::string csv = slurp(dir / "eigenvalues.csv");
    CHECK(csv.rfind("index,value\n0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 61);
}

TEST_CASE("free box against the analytic table", "[cli]") {
    const auto dir = scratch("free");
    REQUIRE(run("spectrum --kind free --L 3.1415926535 --n 129 --k 10 --out " + dir.string()) == exit_ok);
    const auto r = load(dir / "spectrum.json");
    CHECK(r["box_max_relative_error"].get<double>() < 1e-3);
    CHECK(r["box_oracle"].size() == 10);
    CHECK_FALSE(r.contains("clusters"));
}

TEST_CASE("reports are byte-identical across runs", "[cli]") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    for (const auto& d : {a, b}) REQUIRE(run("spectrum --L 4 --n 41 --k 20 --set bulk.margin=1.5 --set output=x --out " + d.string()) == 0);
    CHECK(slurp(a / "spectrum.json") == slurp(b / "spectrum.json"));
    CHECK(slurp(a / "eigenvalues.csv") == slurp(b / "eigenvalues.csv"));
}

TEST_CASE("exit codes", "[cli]") {
    const auto dir = scratch("exit");
    CHECK(run("spectrum --sigma 0 --out " + dir.string()) == exit_validation);
    CHECK(run("spectrum --bogus 1") == exit_validation);
    CHECK(run("gauge-check --L 4 --n 33 --set bulk.margin=1.5 --set chi.2.0=1 --out " + dir.string()) == exit_validation);
    CHECK_FALSE(fs::exists(dir / "gauge_check.json"));
    CHECK(run("convergence --levels 0.25,0.125 --out " + dir.string()) == exit_validation);
    CHECK(run("duality --out " + dir.string()) == exit_validation);
    CHECK(run("duality --S 0 --out " + dir.string()) == exit_validation);

    CHECK(run("spectrum --kind free --L 1 --n 9 --tol 1e-30 --out " + dir.string()) == exit_solver);
    CHECK(load(dir / "spectrum.json")["status"] == "unconverged");

    // chained clusters over a dense window cannot be separated
    CHECK(run("spectrum --L 2 --n 21 --k 100 --set bulk.margin=0 --window 50 --out " + dir.string()) == exit_ambiguous);
    CHECK(load(dir / "spectrum.json")["status"] == "ambiguous");
}

TEST_CASE("config file input", "[cli]") {
    const auto dir = scratch("config");
    std::ofstream(dir / "run.cfg") << "kind = standard-landau\nsigma = 1\nL = 4\nn = 33\nk = 60\nbulk.margin = 1.5\n";
    REQUIRE(run("spectrum --config " + (dir / "run.cfg").string() + " --out " + dir.string()) == exit_ok);
    const auto r = load(dir / "spectrum.json");
    CHECK(r["config"]["kind"] == "standard-landau");
    CHECK(std::abs(r["clusters"][0]["mean"].get<double>() - 0.5) < 0.02);
}

TEST_CASE("gauge-check", "[cli]") {
    const auto dir = scratch("gauge");
    REQUIRE(run("gauge-check --L 4 --n 33 --k 30 --set bulk.margin=1.5 --set chi.1.1=0.5 --out " + dir.string()) == 0);
    auto r = load(dir / "gauge_check.json");
    CHECK(r["field_strength_max_difference"] == 0.0);
    CHECK(r["potentials_consistent"] == true);
    CHECK(r["refinements"][0]["lowest_gap"].get<double>() < 0.02);

    REQUIRE(run("gauge-check --L 4 --n 33 --k 30 --compare symmetric --set bulk.margin=1.5 --out " + dir.string()) == 0);
    r = load(dir / "gauge_check.json");
    for (const auto& d : r["refinements"][0]["mean_differences"]) CHECK(d.get<double>() == 0.0);

    REQUIRE(run("gauge-check --L 4 --n 33 --k 30 --set bulk.margin=1.5 --set chi.1.1=1 --out " + dir.string()) == 0);
    r = load(dir / "gauge_check.json");
    CHECK(r["field_strength_max_difference"] == 0.0);
    CHECK(r["potentials_consistent"] == false);
    CHECK(r.contains("warning"));
}

TEST_CASE("duality command", "[cli]") {
    const auto dir = scratch("duality");
    REQUIRE(run("duality --q 2 --flux 3 --S 0.5 --out " + dir.string()) == 0);
    auto r = load(dir / "duality.json");
    CHECK(r["dipole"]["lambda"] == 6.0);
    CHECK(r["dipole"]["rho0"] == 12.0);
    CHECK(r["delta_e_charge"] == r["delta_e_dipole"]);
    CHECK(r["round_trip_q_flux"] == r["q_flux"]);

    REQUIRE(run("duality --side dipole --lambda 2 --S 1 --out " + dir.string()) == 0);
    r = load(dir / "duality.json");
    CHECK(r["charge"]["flux"] == 2.0);
    CHECK(r["delta_e_dipole"] == 2.0);
}

TEST_CASE("susy command", "[cli]") {
    const auto dir = scratch("susy");
    REQUIRE(run("susy --nb 6 --out " + dir.string()) == 0);
    const auto r = load(dir / "susy.json");
    CHECK(r["max_residual"].get<double>() <= 1e-14);
    CHECK(r["paired"] == true);
    CHECK(r["spectrum"].size() == 13);
    CHECK(run("susy --nb 1") == exit_validation);
}

TEST_CASE("convergence command on the free box", "[cli]") {
    const auto dir = scratch("convergence");
    REQUIRE(run("convergence --kind free --L 1 --levels 0.1,0.05,0.025 --k 2 --out " + dir.string()) == 0);
    const auto r = load(dir / "convergence.json");
    const auto s = r["series"]["box_ground"];
    CHECK(s["fitted"] == true);
    CHECK(std::abs(s["order"].get<double>() - 2.0) < 0.2);
    CHECK(r["flagged"] == false);
}

TEST_CASE("thread count setting", "[cli][parallel]") {
    CHECK(parse_thread_count("3") == 3);
    CHECK(parse_thread_count(nullptr) >= 1);
    CHECK_THROWS_AS(parse_thread_count("0"), ValidationError);
    CHECK_THROWS_AS(parse_thread_count("two"), ValidationError);
    const auto dir = scratch("threads");
    const std::string cmd = "ACLANDAU_THREADS=0 " + std::string(ACLANDAU_CLI_PATH) + " spectrum --L 1 --n 9 --k 2 --out " +
                            dir.string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == exit_validation);
}
