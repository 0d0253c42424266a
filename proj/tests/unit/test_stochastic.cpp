#include "catch_amalgamated.hpp"

#include "volterra/catalogue.hpp"
#include "volterra/ensemble.hpp"
#include "volterra/envelope.hpp"
#include "volterra/error.hpp"
#include "volterra/forcing.hpp"
#include "volterra/rng.hpp"
#include "volterra/tail_model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace volterra;
using namespace volterra::stochastic;
using Catch::Approx;

namespace {

Trajectory sqrt_two_log(std::size_t N) {
    return Trajectory::from_function(3, N - 2, [](std::size_t n) { return std::sqrt(2 * std::log(double(n))); });
}

Trajectory power_scale(std::size_t N, double p) {
    return Trajectory::from_function(1, N, [p](std::size_t n) { return std::pow(double(n), p); });
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * double(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - double(lo);
    return lo + 1 < v.size() ? v[lo] * (1 - frac) + v[lo + 1] * frac : v[lo];
}

} // namespace

// ---------------------------------------------------------------- rng

TEST_CASE("counter streams are deterministic and well spread", "[rng]") {
    const CounterStream a(derive_seed(42, 0)), b(derive_seed(42, 0)), c(derive_seed(42, 1));
    CHECK(a.bits(17) == b.bits(17));
    CHECK(a.bits(17) != c.bits(17));
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));

    double mean = 0.0, var = 0.0, umin = 1.0, umax = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = a.uniform(i);
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        const double z = a.normal(i);
        mean += z;
        var += z * z;
    }
    mean /= n;
    var /= n;
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    CHECK(std::abs(mean) < 0.02);
    CHECK(var == Approx(1.0).margin(0.02));
}

// ---------------------------------------------------------------- tails

TEST_CASE("tail model parameter validation", "[tail]") {
    CHECK_THROWS_AS(TailModel::normal(0.0), ParameterError);
    CHECK_THROWS_AS(TailModel::symmetric_power(-1.0), ParameterError);
    CHECK_THROWS_AS(TailModel::weibull(1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(TailModel::uniform(-1.0), ParameterError);
    CHECK_THROWS_AS(TailModel::custom_quantile({0.0, 0.5}, {1.0, 2.0}), ParameterError);
}

TEST_CASE("property: tail model invariants", "[tail][property]") {
    const std::vector<TailModel> models{
        TailModel::normal(1.5), TailModel::symmetric_power(2.0), TailModel::symmetric_power(3.0, 0.25, 0.75),
        TailModel::weibull(2.0, 1.0), TailModel::weibull(1.0, 0.5), TailModel::uniform(2.0),
        TailModel::custom_quantile({0.0, 0.25, 0.75, 1.0}, {-3.0, -1.0, 1.0, 4.0})};
    for (const auto& m : models) {
        INFO(m.name());
        double prev = 0.0;
        for (double x = -50.0; x <= 50.0; x += 0.37) {
            const double F = m.cdf(x);
            CHECK(F >= prev);
            CHECK(F == Approx(1.0 - m.sf(x)).margin(1e-15));
            prev = F;
        }
        CHECK(m.cdf(-1e6) == Approx(0.0).margin(1e-10));
        CHECK(m.cdf(1e6) == Approx(1.0).margin(1e-10));
        if (m.symmetric())
            for (double x = 0.1; x < 30.0; x += 0.7) CHECK(m.cdf(-x) == Approx(m.sf(x)).epsilon(1e-12).margin(1e-300));
        for (double p : {0.3, 1e-2, 1e-5, 1e-9, 1e-14}) {
            const double x = m.upper_quantile(p);
            if (m.sf(x) > 0.0 && x > 0.0) CHECK(m.upper_quantile(m.sf(x)) == Approx(x).epsilon(1e-8));
        }
    }
}

TEST_CASE("closed-form tail quantiles", "[tail]") {
    const auto exp_tail = TailModel::weibull(2.0, 1.0);
    CHECK(exp_tail.upper_quantile(1e-6) == Approx(2.0 * std::log(0.5e6)).epsilon(1e-12));
    const auto pw = TailModel::symmetric_power(2.0);
    CHECK(pw.upper_quantile(0.005) == Approx(10.0).epsilon(1e-12));
    CHECK(pw.sf(10.0) == Approx(0.005));
    const auto nrm = TailModel::normal(1.0);
    CHECK(nrm.upper_quantile(0.025) == Approx(1.959963984540054).epsilon(1e-9));
    const double x = std::exp(nrm.log_upper_quantile(-1e4 * std::log(10.0)));
    CHECK(x / std::sqrt(2 * 1e4 * std::log(10.0)) == Approx(1.0).margin(0.01));
}

TEST_CASE("tail classifier verdicts", "[tail]") {
    const auto nrm = classify_tail(TailModel::normal(2.0));
    CHECK(nrm.verdict == TailVerdict::rapid);
    CHECK(nrm.ssv.passed);

    const auto pw = classify_tail(TailModel::symmetric_power(2.0, 0.25, 0.75));
    CHECK(pw.verdict == TailVerdict::regularly_varying);
    CHECK(pw.rv_case == RvCase::finite_ratio);
    CHECK(pw.alpha == Approx(2.0).epsilon(1e-3));
    CHECK(pw.L == Approx(3.0).epsilon(1e-6));
    CHECK(to_string(pw.rv_case) == "iii");

    CHECK(classify_tail(TailModel::weibull(1.0, 1.0)).verdict == TailVerdict::rapid);
    CHECK(classify_tail(TailModel::uniform()).verdict == TailVerdict::rapid);
    CHECK(classify_tail(TailModel::symmetric_power(1.5)).verdict == TailVerdict::regularly_varying);
}

// ---------------------------------------------------------------- envelope

TEST_CASE("series classification by decay exponent", "[envelope]") {
    std::vector<double> fast(10000), slow(10000), zero(100, 0.0);
    for (std::size_t i = 0; i < fast.size(); ++i) {
        fast[i] = std::pow(double(i + 1), -1.5);
        slow[i] = std::pow(double(i + 1), -0.9);
    }
    CHECK(classify_series(fast, 1).verdict == SeriesVerdict::convergent);
    CHECK(classify_series(slow, 1).verdict == SeriesVerdict::divergent);
    CHECK(classify_series(zero, 1).verdict == SeriesVerdict::convergent);
    CHECK(classify_series(std::vector<double>{1.0, 0.5, 0.3}, 1).verdict == SeriesVerdict::undecided);
}

TEST_CASE("envelope sums worked examples", "[envelope]") {
    const std::size_t N = 100000;
    const auto nrm = envelope_sums(TailModel::normal(), sqrt_two_log(N), {0.8, 1.2}, N);
    CHECK(nrm.rows[0].fit.verdict == SeriesVerdict::divergent);
    CHECK(nrm.rows[1].fit.verdict == SeriesVerdict::convergent);
    CHECK(nrm.bracketed);
    CHECK(*nrm.crossing == Approx(1.0));

    const std::vector<double> grid{0.5, 1.0, 2.0, 4.0};
    const auto up = envelope_sums(TailModel::symmetric_power(2.0), power_scale(N, 0.6), grid, N);
    const auto down = envelope_sums(TailModel::symmetric_power(2.0), power_scale(N, 0.4), grid, N);
    for (const auto& row : up.rows) CHECK(row.fit.verdict == SeriesVerdict::convergent);
    for (const auto& row : down.rows) CHECK(row.fit.verdict == SeriesVerdict::divergent);

    const auto uni = envelope_sums(TailModel::uniform(), power_scale(1000, 1.0), {0.5, 1.0}, 1000);
    for (const auto& row : uni.rows) CHECK(row.fit.verdict == SeriesVerdict::convergent);

    CHECK_THROWS_AS(envelope_sums(TailModel::normal(), Trajectory(1, {2.0, 1.0}), {1.0}, 2), InputError);
}

TEST_CASE("property: envelope sums are monotone in N and K", "[envelope][property]") {
    const std::size_t N = 20000;
    std::vector<double> grid;
    for (double K = 0.5; K < 2.0; K += 0.25) grid.push_back(K);
    for (const auto& tail : {TailModel::normal(), TailModel::symmetric_power(2.0), TailModel::weibull(1.0, 1.0)}) {
        const auto rep = envelope_sums(tail, sqrt_two_log(N), grid, N);
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const auto& cp = rep.rows[i].checkpoints;
            for (std::size_t j = 1; j < cp.size(); ++j) CHECK(cp[j].second >= cp[j - 1].second);
            if (i > 0) {
                const auto& prev = rep.rows[i - 1].checkpoints;
                for (std::size_t j = 0; j < cp.size(); ++j) CHECK(cp[j].second <= prev[j].second);
            }
        }
    }
}

// ---------------------------------------------------------------- forcing

TEST_CASE("forcing generator worked examples", "[forcing]") {
    CatalogueParams p;
    p.lambda = 0.5;
    const auto h6 = ForcingGenerator::catalogue(GrowthCatalogue(6, p)).generate(5);
    CHECK(h6[0] == 0.0);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(h6[n] == Approx(std::pow(2.0, n)).epsilon(1e-14));

    const auto grw = ForcingGenerator::geometric_random_walk(0.1, std::nullopt, 1).generate(100);
    for (std::size_t n = 1; n <= 100; ++n) CHECK(grw[n] == Approx(std::exp(0.1 * n)).epsilon(1e-13));

    const auto mod = ForcingGenerator::modulated_periodic(GrowthCatalogue(6, p), {1.0, 3.0}).generate(4);
    CHECK(mod[3] == Approx(3.0 * 8.0));
    CHECK(mod[4] == Approx(16.0));
}

TEST_CASE("forcing generators are reproducible per seed", "[forcing]") {
    const auto g = ForcingGenerator::random_walk(0.5, TailModel::normal(), 99);
    const auto a = g.generate(1000), b = g.generate(1000), c = g.with_seed(100).generate(1000);
    for (std::size_t n = 0; n <= 1000; ++n) CHECK(a[n] == b[n]);
    CHECK(a[1000] != c[1000]);
    const auto shorter = g.generate(10);
    for (std::size_t n = 0; n <= 10; ++n) CHECK(shorter[n] == a[n]);
}

TEST_CASE("drifted random walk obeys the strong law", "[forcing]") {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto H = ForcingGenerator::random_walk(1.0, TailModel::normal(), seed).generate(100000);
        if (std::abs(H[100000] / 1e5 - 1.0) < 0.02) ++good;
    }
    CHECK(good >= 9);
}

TEST_CASE("drifted random walk is ultimately non-monotone", "[forcing][property]") {
    const std::size_t N = 20000;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto H = ForcingGenerator::random_walk(1.0, TailModel::normal(), seed).generate(N);
        std::size_t last_decrease = 0;
        for (std::size_t n = 2; n <= N; ++n)
            if (H[n] < H[n - 1]) last_decrease = n;
        CHECK(last_decrease > N - 100);
    }
}

TEST_CASE("geometric random walk ratios do not settle", "[forcing][property]") {
    const double drift = 0.1, sigma = 0.05;
    const double floor = std::exp(-drift) * (std::exp(sigma / 2) - 1) / 2;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto H = ForcingGenerator::geometric_random_walk(drift, TailModel::normal(sigma), seed).generate_log(4000);
        std::vector<double> ratios;
        for (std::size_t n = 3001; n <= 4000; ++n) ratios.push_back(std::exp(H[n - 1].log_abs - H[n].log_abs));
        CHECK(quantile(ratios, 0.75) - quantile(ratios, 0.25) > floor);
    }
}

// ---------------------------------------------------------------- ensemble

TEST_CASE("ensemble runs are deterministic across thread counts", "[ensemble]") {
    EnsembleSystem sys;
    sys.kernel = Kernel::single(0.5);
    sys.forcing = ForcingGenerator::iid(TailModel::normal(), 7);
    sys.horizon = 5000;
    sys.statistic = Statistic::phi_average;
    sys.band_lo = 1.2;
    sys.band_hi = 1.5;
    sys.threads = 1;
    const auto a = ensemble_verify(sys, 8);
    sys.threads = 4;
    const auto b = ensemble_verify(sys, 8);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].value == b.paths[i].value);
        CHECK(a.paths[i].seed == path_seed(7, i));
    }
    CHECK(a.median == b.median);
    CHECK(a.failures == 0);
}

TEST_CASE("degenerate noise gives identical paths", "[ensemble]") {
    EnsembleSystem sys;
    sys.kernel = Kernel::single(0.3);
    sys.forcing = ForcingGenerator::geometric_random_walk(0.1, std::nullopt, 3);
    sys.horizon = 500;
    sys.statistic = Statistic::log_growth_rate;
    sys.band_lo = 0.09;
    sys.band_hi = 0.11;
    const auto res = ensemble_verify(sys, 5);
    for (const auto& p : res.paths) CHECK(p.value == res.paths[0].value);
    CHECK((res.pass_fraction == 0.0 || res.pass_fraction == 1.0));
}

TEST_CASE("overflowing paths are recorded, not fatal", "[ensemble]") {
    EnsembleSystem sys;
    sys.kernel = Kernel::single(0.5);
    sys.forcing = ForcingGenerator::geometric_random_walk(1.0, TailModel::normal(), 1);
    sys.horizon = 1000;
    sys.statistic = Statistic::log_growth_rate;
    const auto res = ensemble_verify(sys, 4);
    CHECK(res.failures == 4);
    CHECK(res.pass_fraction == 0.0);
    for (const auto& p : res.paths) CHECK_FALSE(p.error.empty());

    sys.log_domain = true;
    const auto ok = ensemble_verify(sys, 4);
    CHECK(ok.failures == 0);
    CHECK(ok.median == Approx(1.0).margin(0.1));
    CHECK_THROWS_AS(statistic_from_name("mean"), InputError);
}
