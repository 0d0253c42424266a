// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "random_systems.hpp"
#include "volterra/asymptotics.hpp"
#include "volterra/core.hpp"
#include "volterra/ensemble.hpp"
#include "volterra/envelope.hpp"
#include "volterra/experiment.hpp"
#include "volterra/forcing.hpp"
#include "volterra/spectral.hpp"
#include "volterra/tail_model.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace volterra;
namespace A = volterra::asymptotics;
namespace S = volterra::stochastic;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

LogTrajectory log_forcing(std::size_t N, const std::function<double(std::size_t)>& log_h) {
    std::vector<LogValue> v(N);
    for (std::size_t n = 1; n <= N; ++n) v[n - 1] = LogValue::from_log(log_h(n));
    return LogTrajectory(1, std::move(v));
}

A::ScalingModel log_scale(std::size_t N, double lambda, const std::function<double(std::size_t)>& log_a) {
    std::vector<LogValue> v(N + 1);
    for (std::size_t n = 0; n <= N; ++n) v[n] = LogValue::from_log(log_a(n));
    return A::ScalingModel::custom_log(LogTrajectory(0, std::move(v)), lambda);
}

A::ScalingModel power_scale(std::size_t N, double p) {
    return A::ScalingModel::custom(
        Trajectory::from_function(0, N + 1, [p](std::size_t n) { return std::pow(std::max<double>(double(n), 1.0), p); }),
        1.0, "power");
}

// 1 -------------------------------------------------------------------------
Outcome solver_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    testing::Gen gen(1);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto k = gen.kernel(gen.uniform(0.0, 0.95), 30);
        const auto H = gen.forcing(2000, gen.uniform(1.0, 1e6));
        const double xi = gen.uniform(-1e3, 1e3);
        worst = std::max(worst, max_relative_gap(solve_linear(k, H, xi, 2000), solve_by_representation(k, H, xi, 2000)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst < 1e-10 && secs < 30.0, "max gap " + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) + " s"};
}

// 2 -------------------------------------------------------------------------
Outcome resolvent_identity() {
    testing::Gen gen(2);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto k = gen.kernel(gen.uniform(0.0, 0.95), 30);
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0})
            worst = std::max(worst, spectral::rho_of_lambda(k, lambda, 2000).final_gap);
    }
    return {worst < 1e-8, "max gap " + fmt("%.3g", worst)};
}

// 3 -------------------------------------------------------------------------
Outcome multiplier_limits() {
    const auto geo = A::verify_growth2(Kernel::geometric(0.3, 0.5, 40),
                                       log_forcing(200, [](std::size_t n) { return double(n) * std::log(2.0); }), 1.0);
    const double at200 = std::abs(geo.x_over_H[200] - 1.25);

    const std::size_t N = 1000000;
    const auto fact = A::verify_growth2(Kernel::geometric(0.3, 0.5, 40),
                                        log_forcing(N, [](std::size_t n) { return std::lgamma(double(n) + 1.0); }), 1.0);
    const double gap1 = std::abs(fact.L_empirical - 1.0);
    const bool ok = at200 < 1e-6 && geo.residual < 1e-6 && gap1 < 1e-6 && fact.residual < 1e-6;
    return {ok, "|x/H(200)-1.25| " + fmt("%.3g", at200) + ", factorial |L-1| " + fmt("%.3g", gap1) +
                    " (theory residual " + fmt("%.3g", fact.residual) + ")"};
}

// 4 -------------------------------------------------------------------------
Outcome modulated_representation() {
    const std::size_t N = 300;
    const double l2 = std::log(2.0);
    const auto H = log_forcing(N, [&](std::size_t n) { return double(n) * l2 + std::log(1.0 + (n % 2 ? -0.25 : 0.25)); });
    const auto res = A::verify_growth3(Kernel::geometric(0.3, 0.5, 40), H, 1.0,
                                       log_scale(N, 0.5, [&](std::size_t n) { return double(n) * l2; }));
    const bool ok = res.x_side.residual_sup < 1e-4 && res.H_side.residual_sup < 1e-4;
    return {ok, "x residual " + fmt("%.3g", res.x_side.residual_sup) + ", H residual " + fmt("%.3g", res.H_side.residual_sup)};
}

// 5 -------------------------------------------------------------------------
Outcome periodic_growth() {
    const std::size_t N = 1000;
    const double alpha = 0.3, two_pi = 2 * std::numbers::pi;
    std::vector<double> pattern(7);
    for (std::size_t m = 0; m < 7; ++m)
        pattern[m] = 1.0 + 0.5 * std::sin(two_pi * double(m) / 7) + 0.25 * std::cos(2 * two_pi * double(m) / 7);
    const Kernel k({0.4});
    const auto H = log_forcing(N, [&](std::size_t n) { return alpha * double(n) + std::log(pattern[n % 7]); });
    const auto scale = log_scale(N, std::exp(-alpha), [&](std::size_t n) { return alpha * double(n); });
    const Trajectory x_over_a = scale.ratio(solve_linear_log(k, H, 0.0, N)).slice(1, N + 1);

    const auto ex = A::extract_almost_periodic(x_over_a);
    const auto image = A::periodic_image(resolvent(k, N), scale.lambda, pattern);
    const auto predicted = Trajectory::from_function(1, N, [&](std::size_t n) { return image[n % 7]; });
    const double residual = A::tail_sup_difference(x_over_a, predicted);
    return {ex.period == 7 && residual < 1e-3,
            "period " + std::to_string(ex.period) + ", representation residual " + fmt("%.3g", residual)};
}

// 6 -------------------------------------------------------------------------
Outcome ergodic_average() {
    const std::size_t N = 100000;
    CatalogueParams p;
    p.lambda = 0.5;
    S::EnsembleSystem sys;
    sys.kernel = Kernel::single(0.5);
    sys.forcing = S::ForcingGenerator::modulated_iid(GrowthCatalogue(6, p), S::TailModel::uniform(1.0), 0.5, 0.5, 6);
    sys.horizon = N;
    sys.log_domain = true;
    sys.scale = A::ScalingModel::from_catalogue(GrowthCatalogue(6, p), N);
    sys.statistic = S::Statistic::cesaro_limit;
    sys.band_lo = 2.0 / 3.0 - 0.01;
    sys.band_hi = 2.0 / 3.0 + 0.01;
    const auto res = S::ensemble_verify(sys, 20);
    return {res.pass_fraction >= 0.9,
            "pass fraction " + fmt("%.2f", res.pass_fraction) + ", median " + fmt("%.5f", res.median)};
}

// 7 -------------------------------------------------------------------------
Outcome fluctuation_families() {
    struct Family {
        std::string name;
        std::size_t N;
        std::function<Trajectory(std::size_t)> H;
        std::function<A::ScalingModel(std::size_t)> scale;
    };
    auto fn = [](std::function<double(std::size_t)> f) {
        return [f](std::size_t N) { return Trajectory::from_function(1, N, f); };
    };
    auto lin = [](std::size_t N) { return power_scale(N, 1.0); };
    const std::vector<Family> families{
        {"log(n+1)/n", 1000000, fn([](std::size_t n) { return std::log(double(n) + 1); }), lin},
        {"n^0.3/n^2", 100000, fn([](std::size_t n) { return std::pow(double(n), 0.3); }), [](std::size_t N) { return power_scale(N, 2.0); }},
        {"(-1)^n n/n", 100000, fn([](std::size_t n) { return (n % 2 ? -1.0 : 1.0) * double(n); }), lin},
        {"n(2+sin n)/n", 100000, fn([](std::size_t n) { return double(n) * (2 + std::sin(double(n))); }), lin},
        {"normal/sqrt(2 log n)", 100000,
         [](std::size_t N) { return S::ForcingGenerator::iid(S::TailModel::normal(), 7).generate(N).slice(1, N + 1); },
         [](std::size_t N) { return A::ScalingModel::sqrt_two_log(N); }},
        {"n^2/n", 100000, fn([](std::size_t n) { return double(n) * double(n); }), lin},
        {"e^sqrt(n)/n over n", 10000, fn([](std::size_t n) { return std::exp(std::sqrt(double(n))) / double(n); }), lin},
    };
    const std::vector<Kernel> kernels{Kernel::single(0.5), Kernel({-0.4, 0.3})};
    std::size_t cases = 0, good = 0;
    std::ostringstream bad;
    for (const auto& f : families) {
        const auto H = f.H(f.N);
        const auto scale = f.scale(f.N);
        for (const auto& k : kernels) {
            ++cases;
            const auto x = solve_linear(k, H, 0.0, f.N);
            const auto rep = A::fluctuation_bounds(k, x, H, scale);
            if (rep.upper_x_holds && rep.upper_H_holds && rep.classes_agree) ++good;
            else bad << " [" << f.name << " k0=" << k(0) << " x:" << A::to_string(rep.x.classification)
                     << " H:" << A::to_string(rep.H.classification) << "]";
        }
    }
    return {good == cases, std::to_string(good) + "/" + std::to_string(cases) + " cases" + bad.str()};
}

// 8 -------------------------------------------------------------------------
Outcome phi_moments() {
    S::EnsembleSystem sys;
    sys.kernel = Kernel::single(0.5);
    sys.forcing = S::ForcingGenerator::iid(S::TailModel::normal(), 8);
    sys.horizon = 100000;
    sys.statistic = S::Statistic::phi_average;
    sys.phi = A::ConvexFunctional::power(2.0);
    const auto res = S::ensemble_verify(sys, 20);
    const double r1 = A::resolvent_l1(sys.kernel, sys.horizon);
    const double bound = r1 * r1;
    const bool ok = res.failures == 0 && res.median >= 1.25 && res.median <= 1.42 && res.median < bound;
    return {ok, "median " + fmt("%.4f", res.median) + ", bound " + fmt("%.4f", bound)};
}

// 9 -------------------------------------------------------------------------
Outcome normal_envelope() {
    const std::size_t N = 1000000;
    const auto a = Trajectory::from_function(3, N - 2, [](std::size_t n) { return std::sqrt(2 * std::log(double(n))); });
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(0.55 + 0.1 * i);
    const auto env = S::envelope_sums(S::TailModel::normal(), a, grid, N);
    const bool bracket = env.bracketed && env.bracket_lo < 1.0 && env.bracket_hi > 1.0 &&
                         env.bracket_hi - env.bracket_lo < 0.1 + 1e-9;

    S::EnsembleSystem sys;
    sys.kernel = Kernel::zero();
    sys.forcing = S::ForcingGenerator::iid(S::TailModel::normal(), 9);
    sys.horizon = 100000;
    sys.scale = A::ScalingModel::sqrt_two_log(sys.horizon);
    sys.statistic = S::Statistic::limsup_ratio;
    const auto res = S::ensemble_verify(sys, 50);
    const bool median_ok = res.failures == 0 && res.median >= 0.8 && res.median <= 1.1;
    return {bracket && median_ok, "bracket [" + fmt("%.2f", env.bracket_lo) + ", " + fmt("%.2f", env.bracket_hi) +
                                      "], median limsup ratio " + fmt("%.4f", res.median)};
}

// 10 ------------------------------------------------------------------------
Outcome geometric_walk_rate() {
    S::EnsembleSystem sys;
    sys.kernel = Kernel::geometric(0.3, 0.5, 40);
    sys.forcing = S::ForcingGenerator::geometric_random_walk(0.1, S::TailModel::normal(0.05), 10);
    sys.horizon = 10000;
    sys.log_domain = true;
    sys.xi = 1.0;
    sys.statistic = S::Statistic::log_growth_rate;
    sys.band_lo = 0.09;
    sys.band_hi = 0.11;
    const auto res = S::ensemble_verify(sys, 50);
    return {res.pass_fraction >= 0.9,
            "kernel sum " + fmt("%.6f", sys.kernel.sum()) + ", pass fraction " + fmt("%.2f", res.pass_fraction) +
                ", median " + fmt("%.5f", res.median)};
}

// 11 ------------------------------------------------------------------------
Outcome power_tail_exponent() {
    S::EnsembleSystem sys;
    sys.kernel = Kernel::single(0.5);
    sys.forcing = S::ForcingGenerator::iid(S::TailModel::symmetric_power(2.0), 11);
    sys.horizon = 1000000;
    sys.statistic = S::Statistic::log_log_exponent;
    sys.band_lo = 0.4;
    sys.band_hi = 0.6;
    const auto res = S::ensemble_verify(sys, 20);
    return {res.pass_fraction >= 0.8,
            "pass fraction " + fmt("%.2f", res.pass_fraction) + ", median " + fmt("%.4f", res.median)};
}

// 12 ------------------------------------------------------------------------
Outcome nonlinear_linearisation() {
    using lab::json;
    auto run = [](const char* text) { return lab::verify_nonlinear(lab::parse_config(json::parse(text))); };
    const auto rational = run(R"({
        "mode": "verify-nonlinear", "horizon": 10000,
        "kernel": {"type": "single", "c": 0.5},
        "nonlinearity": {"name": "rational"},
        "forcing": {"type": "catalogue", "member": "H3", "theta1": 1},
        "scaling": {"type": "catalogue", "member": "H3", "theta1": 1}
    })");
    const auto root = run(R"({
        "mode": "verify-nonlinear", "horizon": 10000,
        "kernel": {"type": "single", "c": 0.5},
        "nonlinearity": {"name": "sqrt"},
        "forcing": {"type": "catalogue", "member": "H3", "theta1": 2},
        "scaling": {"type": "catalogue", "member": "H3", "theta1": 2}
    })");
    const auto solow = run(R"({
        "mode": "verify-nonlinear", "horizon": 2000,
        "kernel": {"type": "single", "c": 0.5},
        "nonlinearity": {"name": "solow", "delta": 0.1, "s": 0.2},
        "forcing": {"type": "catalogue", "member": "H6", "lambda": 0.9523809523809523},
        "scaling": {"type": "catalogue", "member": "H6", "lambda": 0.9523809523809523},
        "expected_class": "finite-positive"
    })");
    auto linear_ok = [](const lab::Report& r) {
        return r.checks.at("block_max_decreasing").passed && r.checks.at("final_block_max").passed;
    };
    const bool ok = linear_ok(rational) && linear_ok(root) && solow.passed();
    return {ok, "final block max rational " + fmt("%.3g", rational.checks.at("final_block_max").value) + ", sqrt " +
                    fmt("%.3g", root.checks.at("final_block_max").value) + "; solow classes " +
                    solow.verdicts.at("class_x") + "/" + solow.verdicts.at("class_H")};
}

// 13 ------------------------------------------------------------------------
Outcome tail_classifier() {
    const auto nrm = S::classify_tail(S::TailModel::normal());
    const auto pw = S::classify_tail(S::TailModel::symmetric_power(2.0));
    const auto ex = S::classify_tail(S::TailModel::weibull(1.0, 1.0));
    const bool ok = nrm.verdict == S::TailVerdict::rapid && pw.verdict == S::TailVerdict::regularly_varying &&
                    pw.rv_case == S::RvCase::finite_ratio && ex.verdict == S::TailVerdict::rapid;
    return {ok, "normal " + S::to_string(nrm.verdict) + ", power " + S::to_string(pw.verdict) + " case " +
                    S::to_string(pw.rv_case) + " alpha " + fmt("%.3f", pw.alpha) + ", exponential " +
                    S::to_string(ex.verdict)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"solver equivalence", solver_equivalence},
        {"resolvent identity", resolvent_identity},
        {"multiplier limits", multiplier_limits},
        {"modulated exponential representation", modulated_representation},
        {"periodic growth", periodic_growth},
        {"ergodic time average", ergodic_average},
        {"fluctuation bounds", fluctuation_families},
        {"phi time averages", phi_moments},
        {"normal envelope", normal_envelope},
        {"geometric random walk rate", geometric_walk_rate},
        {"power-tail exponent", power_tail_exponent},
        {"nonlinear linearisation", nonlinear_linearisation},
        {"tail classifier", tail_classifier},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out.passed) ++failures;
        std::printf("%s %2zu %s: %s (%.1f s)\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    out.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
