#pragma once

#include "volterra/asymptotics.hpp"
#include "volterra/forcing.hpp"
#include "volterra/kernel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace volterra::stochastic {

/// Per-path statistics of a solution x(0..N):
///   limsup_ratio      max of |x(n)|/a(n) over the final dyadic block
///   log_growth_rate   log|x(N)| / N
///   log_log_exponent  max of log|x(n)|/log n over the final dyadic block
///   cesaro_limit      (1/N) sum_{n=1}^{N} x(n)/a(n)
///   phi_average       (1/N) sum_{n=1}^{N} phi(|x(n)|)
enum class Statistic { limsup_ratio, log_growth_rate, log_log_exponent, cesaro_limit, phi_average };

Statistic statistic_from_name(std::string_view name);
std::string to_string(Statistic s);

struct EnsembleSystem {
    Kernel kernel = Kernel::zero();
    ForcingGenerator forcing = ForcingGenerator::catalogue(GrowthCatalogue(3));
    double xi = 0.0;
    std::size_t horizon = 1000;
    bool log_domain = false;
    std::optional<asymptotics::ScalingModel> scale;  ///< limsup_ratio and cesaro_limit
    asymptotics::LimsupOptions limsup;  ///< block burn-in for limsup_ratio
    asymptotics::ConvexFunctional phi = asymptotics::ConvexFunctional::power(2.0);
    Statistic statistic = Statistic::limsup_ratio;
    double band_lo = -1e300;
    double band_hi = 1e300;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

struct PathOutcome {
    std::size_t path = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    double value = 0.0;
    bool in_band = false;
    std::string error;
};

struct EnsembleResult {
    std::vector<PathOutcome> paths;  ///< ordered by path index
    std::vector<double> values;      ///< successful values, sorted
    double median = 0.0;
    double pass_fraction = 0.0;      ///< failed paths count as outside the band
    std::size_t failures = 0;
};

/// Seed of path i: derive_seed(forcing seed, i).
std::uint64_t path_seed(std::uint64_t master, std::size_t path) noexcept;

/// One path: solve, then evaluate the statistic. Throws on failure.
double path_statistic(const EnsembleSystem& system, std::uint64_t seed);

/// Runs the paths on worker threads; a path that throws is recorded as failed.
EnsembleResult ensemble_verify(const EnsembleSystem& system, std::size_t paths);

} // namespace volterra::stochastic
