#pragma once

// JSON-configured experiments: one document per run, dispatched by mode, with
// a self-describing report (resolved configuration, checks, statistics) and
// CSV series written next to it.

#include "volterra/asymptotics.hpp"
#include "volterra/catalogue.hpp"
#include "volterra/ensemble.hpp"
#include "volterra/forcing.hpp"
#include "volterra/kernel.hpp"
#include "volterra/nonlinearity.hpp"
#include "volterra/tail_model.hpp"
#include "volterra/trajectory.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace volterra::lab {

using json = nlohmann::json;

inline constexpr const char* version = "volterra-lab 0.1.0";

/// Modes accepted by run_experiment.
const std::vector<std::string>& modes();

struct ScalingSpec {
    enum class Type { catalogue, sqrt_two_log, explicit_values };
    Type type = Type::catalogue;
    std::optional<GrowthCatalogue> member;
    std::vector<double> values;  ///< explicit a(start..), positive
    std::size_t start = 0;
    double lambda = 1.0;

    asymptotics::ScalingModel build(std::size_t horizon) const;
};

struct Tolerances {
    double growth2 = 1e-6;
    double growth3 = 1e-4;
    double periodic = 1e-3;
    double ergodic = 0.01;
    double nonlinear = 1e-3;
    double fluct_slack = 0.05;
    double backward_error = 1e-12;
};

struct EnsembleSettings {
    std::size_t paths = 1;
    std::optional<stochastic::Statistic> statistic;
    double band_lo = -1e300;
    double band_hi = 1e300;
    double required_fraction = 0.9;
    std::optional<std::pair<double, double>> median_band;
    unsigned threads = 0;
};

struct ExperimentConfig {
    std::string mode;
    std::size_t horizon = 1000;
    std::uint64_t seed = 0;
    bool log_domain = false;
    double xi = 0.0;

    Kernel kernel = Kernel::zero();
    std::optional<stochastic::ForcingGenerator> forcing;
    std::optional<std::vector<double>> forcing_values;  ///< explicit H(1..)
    std::optional<ScalingSpec> scaling;
    std::optional<Nonlinearity> nonlinearity;
    std::optional<stochastic::TailModel> tail;
    asymptotics::ConvexFunctional phi = asymptotics::ConvexFunctional::power(2.0);

    std::vector<double> lambda_grid;
    std::vector<double> K_grid;
    std::optional<std::size_t> period_hint;
    std::optional<std::size_t> expected_period;
    std::optional<double> target;
    std::optional<double> expected_crossing;
    std::optional<std::string> expected_verdict;
    std::optional<std::string> expected_case;
    std::optional<std::string> expected_class;
    EnsembleSettings ensemble;
    Tolerances tol;
    asymptotics::LimsupOptions limsup;

    /// The configuration with every default filled in.
    json echo;
};

/// Validates and resolves a configuration. Unknown fields and type errors
/// raise ConfigError naming the JSON path. `mode` and `seed` override the
/// document's values.
ExperimentConfig parse_config(const json& doc, std::optional<std::string> mode = {},
                              std::optional<std::uint64_t> seed = {});
ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::string> mode = {},
                             std::optional<std::uint64_t> seed = {});

struct Series {
    std::vector<std::size_t> n;
    std::vector<double> value;

    static Series from(const Trajectory& t);
};

struct Check {
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
    std::string relation;  ///< how value is compared with limit, e.g. "<" or "=="
};

struct Report {
    std::string version = lab::version;
    std::string mode;
    json config;
    std::map<std::string, Check> checks;
    std::map<std::string, double> statistics;
    std::map<std::string, std::string> verdicts;
    std::map<std::string, std::string> series_files;
    double wall_clock_seconds = 0.0;

    /// In-memory series; written by write_outputs, not serialised.
    std::map<std::string, Series> series;

    bool passed() const;
    json to_json() const;
    static Report from_json(const json& j);
};

Report run_experiment(const ExperimentConfig& config);

/// Nonlinear solve against its linearisation at infinity.
Report verify_nonlinear(const ExperimentConfig& config);

/// Writes <dir>/<name>.csv (header n,value) per series and <dir>/report.json;
/// fills series_files. Returns the report path.
std::filesystem::path write_outputs(Report& report, const std::filesystem::path& dir);

void write_series_csv(const std::filesystem::path& path, const Series& series);

/// Kernel, forcing, scaling, tail and growth catalogues for --list-catalogue.
std::vector<std::string> catalogue_listing();

} // namespace volterra::lab
