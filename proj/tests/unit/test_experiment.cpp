#include "catch_amalgamated.hpp"

#include "volterra/error.hpp"
#include "volterra/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace volterra;
using namespace volterra::lab;
using Catch::Approx;

namespace {

json growth2_doc() {
    return json::parse(R"({
        "mode": "verify-growth2",
        "horizon": 200,
        "log_domain": true,
        "xi": 1.0,
        "kernel": {"type": "geometric", "c": 0.3, "ratio": 0.5, "length": 40},
        "forcing": {"type": "catalogue", "member": "H6", "lambda": 0.5}
    })");
}

std::string config_error_path(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "";
}

} // namespace

TEST_CASE("config validation names the offending field", "[config]") {
    auto doc = growth2_doc();
    doc["forcing"]["thetaa"] = 1;
    CHECK(config_error_path(doc) == "$.forcing.thetaa");

    doc = growth2_doc();
    doc["horizon"] = "long";
    CHECK(config_error_path(doc) == "$.horizon");

    doc = growth2_doc();
    doc["mode"] = "dance";
    CHECK(config_error_path(doc) == "$.mode");

    doc = growth2_doc();
    doc["kernel"] = {{"type", "explicit"}};
    CHECK(config_error_path(doc).rfind("$.kernel", 0) == 0);

    doc = growth2_doc();
    doc["bogus"] = true;
    CHECK(config_error_path(doc) == "$.bogus");
}

TEST_CASE("resolved config echoes defaults", "[config]") {
    const auto cfg = parse_config(growth2_doc(), std::nullopt, 12345);
    CHECK(cfg.seed == 12345);
    CHECK(cfg.echo.contains("tolerances"));
    CHECK(cfg.echo["seed"] == 12345);
    CHECK(cfg.echo["kernel"]["type"] == "geometric");
    const auto again = parse_config(cfg.echo);
    CHECK(again.echo == cfg.echo);
}

TEST_CASE("solve mode with a zero kernel reproduces the forcing", "[experiment]") {
    const auto cfg = parse_config(json::parse(R"({
        "mode": "solve", "horizon": 5, "xi": 7,
        "kernel": {"type": "zero"},
        "forcing": {"type": "explicit", "values": [1, 2, 3, 4, 5]}
    })"));
    const auto rep = run_experiment(cfg);
    CHECK(rep.passed());
    const auto& x = rep.series.at("x");
    REQUIRE(x.value.size() == 6);
    CHECK(x.value[0] == 7.0);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(x.value[n] == double(n));
}

TEST_CASE("spectrum mode flags an unstable kernel", "[experiment]") {
    const auto cfg = parse_config(json::parse(R"({
        "mode": "spectrum", "kernel": {"type": "explicit", "coefficients": [2.0]}, "lambda_grid": [0.25]
    })"));
    const auto rep = run_experiment(cfg);
    CHECK(rep.verdicts.at("summable") == "false");
    CHECK(rep.statistics.at("max_modulus") == Approx(2.0));
}

TEST_CASE("growth2 mode reaches the multiplier", "[experiment]") {
    const auto rep = run_experiment(parse_config(growth2_doc()));
    CHECK(rep.passed());
    CHECK(rep.statistics.at("L_theory") == Approx(1.25));
    CHECK(rep.checks.at("multiplier_residual").value < 1e-6);
}

TEST_CASE("reports round-trip and echoed configs rerun bitwise", "[experiment]") {
    const auto doc = json::parse(R"({
        "mode": "ensemble", "horizon": 2000, "seed": 5,
        "kernel": {"type": "explicit", "coefficients": [0.5]},
        "forcing": {"type": "iid", "noise": {"family": "normal", "sigma": 1.0}},
        "phi": {"kind": "power", "p": 2},
        "ensemble": {"paths": 6, "statistic": "phi_average", "band": [1.0, 1.7], "threads": 2}
    })");
    const auto rep = run_experiment(parse_config(doc));
    const auto back = Report::from_json(rep.to_json());
    CHECK(back.to_json() == rep.to_json());

    const auto rerun = run_experiment(parse_config(rep.config));
    REQUIRE(rerun.statistics.size() == rep.statistics.size());
    for (const auto& [k, v] : rep.statistics) {
        INFO(k);
        if (std::isnan(v)) CHECK(std::isnan(rerun.statistics.at(k)));
        else CHECK(rerun.statistics.at(k) == v);
    }
}

TEST_CASE("outputs are written as csv and json", "[experiment]") {
    const auto dir = std::filesystem::temp_directory_path() / "volterra_lab_test_out";
    std::filesystem::remove_all(dir);
    auto rep = run_experiment(parse_config(growth2_doc()));
    const auto report_path = write_outputs(rep, dir);
    CHECK(std::filesystem::exists(report_path));
    REQUIRE_FALSE(rep.series_files.empty());
    std::ifstream csv(dir / rep.series_files.begin()->second);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,value");
    std::ifstream rj(report_path);
    const auto j = json::parse(rj);
    CHECK(j["version"] == version);
    CHECK(j.contains("wall_clock_seconds"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("nonlinear verification with the identity has zero gap", "[experiment]") {
    const auto cfg = parse_config(json::parse(R"({
        "mode": "verify-nonlinear", "horizon": 8192,
        "kernel": {"type": "explicit", "coefficients": [0.5]},
        "nonlinearity": {"name": "identity"},
        "forcing": {"type": "catalogue", "member": "H3", "theta1": 1},
        "scaling": {"type": "catalogue", "member": "H3", "theta1": 1}
    })"));
    const auto rep = verify_nonlinear(cfg);
    CHECK(rep.statistics.at("block_max_2") == 0.0);
    CHECK(rep.passed());
}

TEST_CASE("catalogue listing mentions every growth member", "[experiment]") {
    std::ostringstream all;
    for (const auto& line : catalogue_listing()) all << line << '\n';
    for (int i = 1; i <= 10; ++i) CHECK(all.str().find("H" + std::to_string(i)) != std::string::npos);
    CHECK(std::find(modes().begin(), modes().end(), "verify-nonlinear") != modes().end());
}
