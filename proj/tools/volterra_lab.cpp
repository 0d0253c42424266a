// volterra-lab <mode> --config path.json [--seed u64] [--out dir]
// volterra-lab --list-catalogue
//
// Exit status: 0 when every check passed, 2 when a check failed, 1 on error.

#include "volterra/error.hpp"
#include "volterra/experiment.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("VOLTERRA_LAB_OUT"); env && *env) return env;
    return "volterra-lab-out";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volterra summation equation laboratory"};
    app.set_version_flag("--version", volterra::lab::version);

    std::string mode;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = default_out_dir();
    bool list = false;

    app.add_option("mode", mode, "Experiment mode")->check(CLI::IsMember(volterra::lab::modes()));
    app.add_option("--config,-c", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Master seed (overrides the configuration)");
    app.add_option("--out,-o", out_dir, "Output directory (default: $VOLTERRA_LAB_OUT or ./volterra-lab-out)");
    app.add_flag("--list-catalogue", list, "Print kernel, forcing, scaling and growth catalogues");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (list) {
        for (const auto& line : volterra::lab::catalogue_listing()) std::cout << line << '\n';
        return 0;
    }
    if (mode.empty() || config_path.empty()) {
        std::cerr << "error: a mode and --config are required\n" << app.help();
        return 1;
    }

    try {
        const auto cfg = volterra::lab::load_config(config_path, mode, seed);
        auto report = volterra::lab::run_experiment(cfg);
        const auto path = volterra::lab::write_outputs(report, out_dir);

        for (const auto& [name, check] : report.checks)
            std::cout << (check.passed ? "PASS " : "FAIL ") << name << ": " << check.value << ' ' << check.relation
                      << ' ' << check.limit << '\n';
        std::cout << "report: " << path.string() << '\n';
        return report.passed() ? 0 : 2;
    } catch (const volterra::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
