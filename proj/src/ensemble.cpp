#include "volterra/ensemble.hpp"

#include "volterra/core.hpp"
#include "volterra/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace volterra::stochastic {

Statistic statistic_from_name(std::string_view name) {
    if (name == "limsup_ratio") return Statistic::limsup_ratio;
    if (name == "log_growth_rate") return Statistic::log_growth_rate;
    if (name == "log_log_exponent") return Statistic::log_log_exponent;
    if (name == "cesaro_limit") return Statistic::cesaro_limit;
    if (name == "phi_average") return Statistic::phi_average;
    throw InputError("unknown statistic '" + std::string(name) + "'");
}

std::string to_string(Statistic s) {
    switch (s) {
    case Statistic::limsup_ratio: return "limsup_ratio";
    case Statistic::log_growth_rate: return "log_growth_rate";
    case Statistic::log_log_exponent: return "log_log_exponent";
    case Statistic::cesaro_limit: return "cesaro_limit";
    case Statistic::phi_average: return "phi_average";
    }
    return "limsup_ratio";
}

std::uint64_t path_seed(std::uint64_t master, std::size_t path) noexcept { return derive_seed(master, path); }

namespace {

const asymptotics::ScalingModel& need_scale(const EnsembleSystem& s) {
    if (!s.scale) throw InputError("statistic " + to_string(s.statistic) + " needs a scaling sequence");
    return *s.scale;
}

} // namespace

double path_statistic(const EnsembleSystem& system, std::uint64_t seed) {
    const std::size_t N = system.horizon;
    const ForcingGenerator gen = system.forcing.with_seed(seed);
    LogTrajectory x;
    if (system.log_domain) {
        x = solve_linear_log(system.kernel, gen.generate_log(N), system.xi, N);
    } else {
        x = LogTrajectory::from_trajectory(solve_linear(system.kernel, gen.generate(N), system.xi, N));
    }

    switch (system.statistic) {
    case Statistic::limsup_ratio: {
        const Trajectory ratio = need_scale(system).ratio(x).slice(1, N + 1);
        return asymptotics::estimate_limsup_of_ratio(ratio, system.limsup).blocks.back().max;
    }
    case Statistic::log_growth_rate:
        if (x[N].is_zero()) throw InputError("log_growth_rate: x(N) = 0");
        return x[N].log_abs / static_cast<double>(N);
    case Statistic::log_log_exponent: {
        const auto blocks = asymptotics::dyadic_blocks(2, N + 1, 0.0);
        const auto& last = blocks.back();
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t n = last.begin; n < last.end; ++n)
            if (!x[n].is_zero()) best = std::max(best, x[n].log_abs / std::log(static_cast<double>(n)));
        if (!std::isfinite(best)) throw InputError("log_log_exponent: x vanishes on the final block");
        return best;
    }
    case Statistic::cesaro_limit: {
        const Trajectory ratio = need_scale(system).ratio(x).slice(1, N + 1);
        return asymptotics::time_average(ratio)[N];
    }
    case Statistic::phi_average: {
        double acc = 0.0;
        for (std::size_t n = 1; n <= N; ++n) acc += system.phi(std::abs(x[n].to_double()));
        const double mean = acc / static_cast<double>(N);
        if (!std::isfinite(mean)) throw OverflowError("phi_average overflowed", -1);
        return mean;
    }
    }
    return 0.0;
}

EnsembleResult ensemble_verify(const EnsembleSystem& system, std::size_t paths) {
    if (paths == 0) throw InputError("ensemble_verify: need at least one path");
    if (!(system.band_lo <= system.band_hi)) throw InputError("ensemble_verify: band_lo must not exceed band_hi");
    EnsembleResult res;
    res.paths.resize(paths);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < paths; i = next++) {
            PathOutcome& out = res.paths[i];
            out.path = i;
            out.seed = path_seed(system.forcing.seed(), i);
            try {
                out.value = path_statistic(system, out.seed);
                out.ok = std::isfinite(out.value);
                if (!out.ok) out.error = "non-finite statistic";
            } catch (const std::exception& e) {
                out.ok = false;
                out.error = e.what();
            }
            out.in_band = out.ok && out.value >= system.band_lo && out.value <= system.band_hi;
        }
    };
    unsigned threads = system.threads ? system.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, paths));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::size_t in_band = 0;
    for (const auto& p : res.paths) {
        if (p.ok) res.values.push_back(p.value);
        else ++res.failures;
        if (p.in_band) ++in_band;
    }
    std::sort(res.values.begin(), res.values.end());
    if (!res.values.empty()) {
        const std::size_t m = res.values.size();
        res.median = m % 2 ? res.values[m / 2] : 0.5 * (res.values[m / 2 - 1] + res.values[m / 2]);
    }
    res.pass_fraction = static_cast<double>(in_band) / static_cast<double>(paths);
    return res;
}

} // namespace volterra::stochastic
