#include "volterra/asymptotics.hpp"

#include "volterra/core.hpp"
#include "volterra/error.hpp"
#include "volterra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace volterra::asymptotics {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// First index of the last 25% of [first, end).
std::size_t tail_begin(std::size_t first, std::size_t end) {
    const std::size_t len = end - first;
    const std::size_t w = std::max<std::size_t>(1, (len + 3) / 4);
    return end - std::min(w, len);
}

double quantile_sorted(const std::vector<double>& v, double q) {
    if (v.empty()) return 0.0;
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

LambdaEstimate summarize_ratios(std::vector<double> ratios) {
    std::sort(ratios.begin(), ratios.end());
    LambdaEstimate est;
    est.lambda_hat = quantile_sorted(ratios, 0.5);
    est.iqr = quantile_sorted(ratios, 0.75) - quantile_sorted(ratios, 0.25);
    est.converged = est.iqr < 1e-3;
    return est;
}

} // namespace

// ---------------------------------------------------------------- ScalingModel

ScalingModel ScalingModel::from_catalogue(const GrowthCatalogue& member, std::size_t horizon) {
    return custom_log(member.generate_log(0, horizon + 1), member.lambda(), member.name());
}

ScalingModel ScalingModel::custom(const Trajectory& a, double lambda, std::string tag) {
    return custom_log(LogTrajectory::from_trajectory(a), lambda, std::move(tag));
}

ScalingModel ScalingModel::custom_log(LogTrajectory a, double lambda, std::string tag) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("scaling lambda must lie in [0,1]");
    bool monotone = true;
    for (std::size_t n = a.start(); n < a.end_index(); ++n) {
        if (a[n].sign != 1) throw InputError("scaling sequence must be positive (index " + std::to_string(n) + ")");
        if (n > a.start() && a[n].log_abs < a[n - 1].log_abs) monotone = false;
    }
    ScalingModel s;
    s.a = std::move(a);
    s.lambda = lambda;
    s.monotone = monotone;
    s.tag = std::move(tag);
    return s;
}

ScalingModel ScalingModel::sqrt_two_log(std::size_t horizon) {
    auto a = Trajectory::from_function(0, horizon + 1, [](std::size_t n) {
        return std::sqrt(2.0 * std::log(std::max<double>(static_cast<double>(n), 3.0)));
    });
    return custom(a, 1.0, "sqrt-2log");
}

Trajectory ScalingModel::ratio(const Trajectory& g) const { return LogTrajectory::from_trajectory(g).divided_by(a); }

Trajectory ScalingModel::ratio(const LogTrajectory& g) const { return g.divided_by(a); }

// ---------------------------------------------------------------- lambda

LambdaEstimate estimate_lambda(const Trajectory& g) {
    if (g.size() < 3) throw InputError("estimate_lambda: need at least 3 values");
    const std::size_t from = std::max(tail_begin(g.start(), g.end_index()), g.start() + 1);
    std::vector<double> ratios;
    for (std::size_t n = from; n < g.end_index(); ++n) {
        if (g[n] == 0.0) throw InputError("estimate_lambda: g vanishes at index " + std::to_string(n) + " (undefined ratio)");
        ratios.push_back(g[n - 1] / g[n]);
    }
    return summarize_ratios(std::move(ratios));
}

LambdaEstimate estimate_lambda(const LogTrajectory& g) {
    if (g.size() < 3) throw InputError("estimate_lambda: need at least 3 values");
    const std::size_t from = std::max(tail_begin(g.start(), g.end_index()), g.start() + 1);
    std::vector<double> ratios;
    for (std::size_t n = from; n < g.end_index(); ++n) {
        if (g[n].is_zero()) throw InputError("estimate_lambda: g vanishes at index " + std::to_string(n) + " (undefined ratio)");
        const LogValue prev = g[n - 1];
        ratios.push_back(prev.is_zero() ? 0.0 : prev.sign * g[n].sign * std::exp(prev.log_abs - g[n].log_abs));
    }
    return summarize_ratios(std::move(ratios));
}

// ---------------------------------------------------------------- limsup

std::string to_string(Growth g) {
    switch (g) {
    case Growth::zero: return "zero";
    case Growth::finite_positive: return "finite-positive";
    case Growth::infinite: return "infinite";
    }
    return "finite-positive";
}

std::vector<Block> dyadic_blocks(std::size_t first, std::size_t end, double burn_in_fraction) {
    std::vector<Block> blocks;
    if (end <= first) return blocks;
    std::size_t b_end = end;
    while (b_end > first) {
        std::size_t b_begin = std::max(first, (b_end + 1) / 2);
        if (b_begin == b_end) b_begin = b_end - 1;
        blocks.push_back({b_begin, b_end, 0.0});
        b_end = b_begin;
    }
    std::reverse(blocks.begin(), blocks.end());
    const auto count = blocks.size();
    auto drop = static_cast<std::size_t>(std::floor(burn_in_fraction * static_cast<double>(count)));
    drop = std::min(drop, count > 3 ? count - 3 : 0);
    blocks.erase(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(drop));
    return blocks;
}

LimsupEstimate estimate_limsup_of_ratio(const Trajectory& ratio, const LimsupOptions& options) {
    const std::size_t first = std::max<std::size_t>(ratio.start(), 1);
    LimsupEstimate est;
    est.blocks = dyadic_blocks(first, ratio.end_index(), options.burn_in_fraction);
    if (est.blocks.size() < 3) throw InputError("estimate_limsup: need at least three dyadic blocks (horizon >= 8)");
    for (auto& b : est.blocks) {
        for (std::size_t n = b.begin; n < b.end; ++n) b.max = std::max(b.max, std::abs(ratio[n]));
        est.observed = std::max(est.observed, b.max);
    }
    const std::size_t k = est.blocks.size();
    const double last = est.blocks[k - 1].max;
    const double third = est.blocks[k - 3].max;
    if ((third > 0.0 && last >= options.growth_factor * third) || (third == 0.0 && last > 0.0)) {
        est.classification = Growth::infinite;
        est.value = inf;
    } else if (est.observed == 0.0 || (last <= third && last < options.zero_threshold * est.observed)) {
        est.classification = Growth::zero;
        est.value = est.observed;
    } else {
        est.classification = Growth::finite_positive;
        est.value = est.observed;
    }
    return est;
}

LimsupEstimate estimate_limsup(const Trajectory& g, const ScalingModel& scale, const LimsupOptions& options) {
    if (!scale.a.defined_at(std::max<std::size_t>(g.start(), 1)) || scale.a.end_index() < g.end_index())
        throw InputError("estimate_limsup: scaling sequence does not cover the trajectory's index range");
    return estimate_limsup_of_ratio(scale.ratio(g), options);
}

LimsupEstimate estimate_limsup(const LogTrajectory& g, const ScalingModel& scale, const LimsupOptions& options) {
    if (!scale.a.defined_at(std::max<std::size_t>(g.start(), 1)) || scale.a.end_index() < g.end_index())
        throw InputError("estimate_limsup: scaling sequence does not cover the trajectory's index range");
    return estimate_limsup_of_ratio(scale.ratio(g), options);
}

// ---------------------------------------------------------------- growth2

Growth2Result verify_growth2(const Kernel& kernel, const LogTrajectory& forcing, double xi) {
    if (forcing.end_index() < 2) throw InputError("verify_growth2: forcing too short");
    const std::size_t horizon = forcing.end_index() - 1;
    const LogTrajectory x = solve_linear_log(kernel, forcing, xi, horizon);

    std::vector<LogValue> h_tail;
    const std::size_t first = std::max<std::size_t>(forcing.start(), 1);
    for (std::size_t n = first; n <= horizon; ++n) h_tail.push_back(forcing[n]);
    const LogTrajectory H(first, std::move(h_tail));
    const std::size_t tb = tail_begin(first, horizon + 1);
    for (std::size_t n = tb; n <= horizon; ++n)
        if (H[n].is_zero()) throw InputError("verify_growth2: H vanishes at index " + std::to_string(n));

    Growth2Result out;
    out.x_over_H = x.divided_by(H);
    double acc = 0.0;
    for (std::size_t n = tb; n <= horizon; ++n) acc += out.x_over_H[n];
    out.L_empirical = acc / static_cast<double>(horizon + 1 - tb);

    out.lambda = estimate_lambda(H);
    const double lambda = std::clamp(out.lambda.lambda_hat, 0.0, 1.0);
    const auto L = spectral::multiplier_L(kernel, lambda);
    out.L_theory = L.value;
    out.summable = L.applicable;
    out.residual = std::abs(out.L_empirical - out.L_theory);
    return out;
}

// ---------------------------------------------------------------- growth3

Trajectory predict_x_over_a(const Trajectory& resolvent, double lambda, const Trajectory& H_over_a) {
    const std::size_t s = H_over_a.start();
    const std::size_t e = H_over_a.end_index();
    if (e > s && resolvent.end_index() < e - s)
        throw InputError("predict_x_over_a: resolvent horizon shorter than the trajectory");
    std::vector<double> weights(e > s ? e - s : 0);
    double power = 1.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        weights[j] = resolvent[j] * power;
        power *= lambda;
    }
    std::vector<double> out(weights.size());
    for (std::size_t n = s; n < e; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= n - s; ++j) acc += weights[j] * H_over_a[n - j];
        out[n - s] = acc;
    }
    return Trajectory(s, std::move(out));
}

Trajectory predict_H_over_a(const Kernel& kernel, double lambda, const Trajectory& x_over_a) {
    const std::size_t s = x_over_a.start();
    const std::size_t e = x_over_a.end_index();
    const std::size_t m = kernel.size();
    std::vector<double> weights(m);
    double power = lambda;
    for (std::size_t j = 0; j < m; ++j) {
        weights[j] = kernel(j) * power;
        power *= lambda;
    }
    std::vector<double> out(e > s ? e - s : 0);
    for (std::size_t n = s; n < e; ++n) {
        double acc = x_over_a[n];
        // j <= n-1 and n-j-1 >= s
        const std::size_t jmax = std::min(m, n - s);
        for (std::size_t j = 0; j < jmax; ++j) acc -= weights[j] * x_over_a[n - j - 1];
        out[n - s] = acc;
    }
    return Trajectory(s, std::move(out));
}

double tail_sup_difference(const Trajectory& a, const Trajectory& b) {
    const std::size_t from = std::max(a.start(), b.start());
    const std::size_t to = std::min(a.end_index(), b.end_index());
    if (to <= from) throw InputError("tail_sup_difference: no common indices");
    double sup = 0.0;
    for (std::size_t n = tail_begin(from, to); n < to; ++n) sup = std::max(sup, std::abs(a[n] - b[n]));
    return sup;
}

std::vector<double> block_sup_differences(const Trajectory& a, const Trajectory& b, std::size_t count) {
    const std::size_t from = std::max<std::size_t>({a.start(), b.start(), 1});
    const std::size_t to = std::min(a.end_index(), b.end_index());
    auto blocks = dyadic_blocks(from, to, 0.0);
    if (blocks.size() > count) blocks.erase(blocks.begin(), blocks.end() - static_cast<std::ptrdiff_t>(count));
    std::vector<double> out;
    for (const auto& blk : blocks) {
        double sup = 0.0;
        for (std::size_t n = blk.begin; n < blk.end; ++n) sup = std::max(sup, std::abs(a[n] - b[n]));
        out.push_back(sup);
    }
    return out;
}

Growth3Result verify_growth3(const Kernel& kernel, const LogTrajectory& forcing, double xi,
                             const ScalingModel& scale) {
    if (forcing.end_index() < 2) throw InputError("verify_growth3: forcing too short");
    const std::size_t horizon = forcing.end_index() - 1;
    if (scale.a.end_index() < horizon + 1 || scale.a.start() > 1)
        throw InputError("verify_growth3: scaling sequence must cover indices 1.." + std::to_string(horizon));
    const LogTrajectory x = solve_linear_log(kernel, forcing, xi, horizon);
    const Trajectory r = resolvent(kernel, horizon);

    std::vector<LogValue> h;
    for (std::size_t n = 1; n <= horizon; ++n) h.push_back(forcing[n]);
    const Trajectory H_over_a = LogTrajectory(1, std::move(h)).divided_by(scale.a);
    const Trajectory x_over_a = x.divided_by(scale.a);  // from a's start (0 or 1)

    Growth3Result out;
    out.x_side.g_over_a = x_over_a.slice(1, horizon + 1);
    out.x_side.predicted = predict_x_over_a(r, scale.lambda, H_over_a);
    out.x_side.residual_sup = tail_sup_difference(out.x_side.g_over_a, out.x_side.predicted);
    out.x_side.block_residuals = block_sup_differences(out.x_side.g_over_a, out.x_side.predicted);

    out.H_side.g_over_a = H_over_a;
    out.H_side.predicted = predict_H_over_a(kernel, scale.lambda, x_over_a).slice(1, horizon + 1);
    out.H_side.residual_sup = tail_sup_difference(out.H_side.g_over_a, out.H_side.predicted);
    out.H_side.block_residuals = block_sup_differences(out.H_side.g_over_a, out.H_side.predicted);
    return out;
}

// ---------------------------------------------------------------- periodic

namespace {

struct PeriodicFit {
    std::vector<double> means;
    double rms = 0.0;
};

PeriodicFit fit_period(const Trajectory& g, std::size_t from, std::size_t to, std::size_t p) {
    PeriodicFit fit;
    fit.means.assign(p, 0.0);
    std::vector<std::size_t> counts(p, 0);
    for (std::size_t n = from; n < to; ++n) {
        fit.means[n % p] += g[n];
        ++counts[n % p];
    }
    for (std::size_t m = 0; m < p; ++m)
        if (counts[m] > 0) fit.means[m] /= static_cast<double>(counts[m]);
    double ss = 0.0;
    for (std::size_t n = from; n < to; ++n) {
        const double d = g[n] - fit.means[n % p];
        ss += d * d;
    }
    fit.rms = std::sqrt(ss / static_cast<double>(to - from));
    return fit;
}

} // namespace

PeriodicExtraction extract_almost_periodic(const Trajectory& g_over_a, std::optional<std::size_t> period_hint) {
    if (g_over_a.size() < 16) throw InputError("extract_almost_periodic: need at least 16 values");
    const std::size_t from = tail_begin(g_over_a.start(), g_over_a.end_index());
    const std::size_t to = g_over_a.end_index();
    const std::size_t w = to - from;

    PeriodicExtraction out;
    std::size_t period = 0;
    if (period_hint) {
        if (*period_hint == 0) throw InputError("extract_almost_periodic: period hint must be >= 1");
        period = *period_hint;
        out.periodic = true;
    } else {
        double mean = 0.0;
        for (std::size_t n = from; n < to; ++n) mean += g_over_a[n];
        mean /= static_cast<double>(w);

        // Bins q/w with the period w/q <= N/8.
        const double max_period = std::max(2.0, static_cast<double>(g_over_a.size()) / 8.0);
        std::vector<double> magnitude;
        std::vector<std::size_t> bins;
        for (std::size_t q = 1; q <= w / 2; ++q) {
            if (static_cast<double>(w) / static_cast<double>(q) > max_period) continue;
            const double omega = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(w);
            double re = 0.0, im = 0.0;
            // Trigonometric recurrence for cos/sin(omega * i).
            const double c1 = std::cos(omega), s1 = std::sin(omega);
            double c = 1.0, s = 0.0;
            for (std::size_t i = 0; i < w; ++i) {
                const double v = g_over_a[from + i] - mean;
                re += v * c;
                im -= v * s;
                const double c_next = c * c1 - s * s1;
                s = s * c1 + c * s1;
                c = c_next;
            }
            magnitude.push_back(std::hypot(re, im));
            bins.push_back(q);
        }
        if (!magnitude.empty()) {
            const auto peak_it = std::max_element(magnitude.begin(), magnitude.end());
            std::vector<double> sorted = magnitude;
            std::sort(sorted.begin(), sorted.end());
            const double median = quantile_sorted(sorted, 0.5);
            const double peak = *peak_it;
            out.peak_ratio = median > 0.0 ? peak / median : (peak > 0.0 ? inf : 0.0);
            if (peak > 0.0 && out.peak_ratio >= 3.0) {
                const double f = static_cast<double>(bins[static_cast<std::size_t>(peak_it - magnitude.begin())]) /
                                 static_cast<double>(w);
                // Integer periods consistent with the peak frequency (or a harmonic of it),
                // within one bin of leakage.
                std::vector<std::pair<std::size_t, PeriodicFit>> candidates;
                const auto p_max = static_cast<std::size_t>(max_period);
                for (std::size_t p = 2; p <= p_max && candidates.size() < 64; ++p) {
                    const double pf = static_cast<double>(p) * f;
                    if (std::abs(pf - std::round(pf)) <= static_cast<double>(p) / static_cast<double>(w) + 1e-12)
                        candidates.emplace_back(p, fit_period(g_over_a, from, to, p));
                }
                if (!candidates.empty()) {
                    double best = inf;
                    for (const auto& [p, fit] : candidates) best = std::min(best, fit.rms);
                    for (const auto& [p, fit] : candidates) {
                        if (fit.rms <= best * 1.05 + 1e-12) {
                            period = p;
                            break;
                        }
                    }
                    out.periodic = true;
                }
            }
        }
    }

    if (out.periodic) {
        out.period = period;
        out.pi_values = fit_period(g_over_a, from, to, period).means;
    } else {
        double mean = 0.0;
        for (std::size_t n = from; n < to; ++n) mean += g_over_a[n];
        out.pi_values = {mean / static_cast<double>(w)};
    }
    const std::size_t p = out.pi_values.size();
    out.pi = Trajectory::from_function(g_over_a.start(), g_over_a.size(),
                                       [&](std::size_t n) { return out.pi_values[n % p]; });
    out.residual = Trajectory::from_function(g_over_a.start(), g_over_a.size(),
                                             [&](std::size_t n) { return g_over_a[n] - out.pi[n]; });
    for (std::size_t n = from; n < to; ++n) out.residual_tail_sup = std::max(out.residual_tail_sup, std::abs(out.residual[n]));
    return out;
}

std::vector<double> periodic_image(const Trajectory& resolvent, double lambda, const std::vector<double>& pi_H) {
    const std::size_t p = pi_H.size();
    if (p == 0) throw InputError("periodic_image: empty period");
    std::vector<double> out(p, 0.0);
    double power = 1.0;
    for (std::size_t j = 0; j < resolvent.end_index(); ++j) {
        const double w = resolvent[j] * power;
        for (std::size_t m = 0; m < p; ++m) out[m] += w * pi_H[(m + p - j % p) % p];
        power *= lambda;
    }
    return out;
}

// ---------------------------------------------------------------- time averages

Trajectory time_average(const Trajectory& g_over_a) {
    const std::size_t first = std::max<std::size_t>(g_over_a.start(), 1);
    if (first != 1) throw InputError("time_average: sequence must be defined from index 1");
    std::vector<double> mu;
    double acc = 0.0;
    for (std::size_t n = 1; n < g_over_a.end_index(); ++n) {
        acc += g_over_a[n];
        mu.push_back(acc / static_cast<double>(n));
    }
    return Trajectory(1, std::move(mu));
}

// ---------------------------------------------------------------- fluctuations

double resolvent_l1(const Kernel& kernel, std::size_t horizon) {
    const Trajectory r = resolvent(kernel, horizon);
    double s = 0.0;
    for (double v : r.values()) s += std::abs(v);
    return s;
}

namespace {
bool extended_leq(double lhs, double factor, double rhs) {
    if (std::isinf(rhs)) return true;
    if (std::isinf(lhs)) return false;
    return lhs <= factor * rhs;
}
} // namespace

FluctuationReport fluctuation_bounds(const Kernel& kernel, const Trajectory& x, const Trajectory& H,
                                     const ScalingModel& scale, double slack, const LimsupOptions& options) {
    FluctuationReport rep;
    rep.x = estimate_limsup(x.slice(1, x.end_index()), scale, options);
    rep.H = estimate_limsup(H.slice(1, H.end_index()), scale, options);
    rep.r_l1 = resolvent_l1(kernel, x.end_index() > 0 ? x.end_index() - 1 : 0);
    rep.k_l1 = kernel.l1_norm();
    rep.upper_x_holds = extended_leq(rep.x.value, (1.0 + slack) * rep.r_l1, rep.H.value);
    rep.upper_H_holds = extended_leq(rep.H.value, (1.0 + slack) * (1.0 + rep.k_l1), rep.x.value);
    rep.classes_agree = rep.x.classification == rep.H.classification;
    return rep;
}

ConvolutionBound convolution_bound(const Kernel& kernel, const Trajectory& H, const ScalingModel& scale,
                                   double slack, const LimsupOptions& options) {
    const std::size_t first = std::max<std::size_t>(H.start(), 1);
    const std::size_t end = H.end_index();
    const std::size_t m = kernel.size();
    std::vector<double> conv(end > first ? end - first : 0);
    for (std::size_t n = first; n < end; ++n) {
        double acc = 0.0;
        const std::size_t lo = (m == 0) ? n + 1 : std::max(first, n + 1 > m ? n + 1 - m : std::size_t{0});
        for (std::size_t j = lo; j <= n; ++j) acc += kernel(n - j) * H[j];
        conv[n - first] = acc;
    }
    const Trajectory conv_t(first, std::move(conv));
    ConvolutionBound out;
    const auto est_conv = estimate_limsup(conv_t, scale, options);
    const auto est_H = estimate_limsup(H.slice(first, end), scale, options);
    out.lhs = est_conv.value;
    out.bound = kernel.l1_norm() * est_H.value;
    if (kernel.l1_norm() == 0.0) out.bound = 0.0;
    out.holds = extended_leq(out.lhs, 1.0 + slack, out.bound);
    return out;
}

// ---------------------------------------------------------------- phi

ConvexFunctional ConvexFunctional::power(double p) {
    if (!(p >= 1.0)) throw ParameterError("power functional needs p >= 1");
    return ConvexFunctional(Kind::power, p);
}

ConvexFunctional ConvexFunctional::exponential() { return ConvexFunctional(Kind::exponential, 0.0); }

ConvexFunctional ConvexFunctional::hinge(double c) {
    if (!(c >= 0.0)) throw ParameterError("hinge functional needs c >= 0");
    return ConvexFunctional(Kind::hinge, c);
}

double ConvexFunctional::operator()(double x) const noexcept {
    switch (kind_) {
    case Kind::power: return std::pow(x, param_);
    case Kind::exponential: return std::expm1(x);
    case Kind::hinge: return std::max(0.0, x - param_);
    }
    return 0.0;
}

std::string ConvexFunctional::name() const {
    switch (kind_) {
    case Kind::power: return "power";
    case Kind::exponential: return "exp";
    case Kind::hinge: return "hinge";
    }
    return "power";
}

bool ConvexFunctional::increasing_convex(double upper, std::size_t samples) const {
    const double h = upper / static_cast<double>(samples);
    double prev = (*this)(0.0);
    for (std::size_t i = 1; i <= samples; ++i) {
        const double cur = (*this)(h * static_cast<double>(i));
        if (cur < prev) return false;
        prev = cur;
    }
    for (std::size_t i = 1; i < samples; ++i) {
        const double x = h * static_cast<double>(i);
        const double second = (*this)(x - h) - 2.0 * (*this)(x) + (*this)(x + h);
        const double scale = std::max(1.0, std::abs((*this)(x)));
        if (second < -1e-12 * scale) return false;
    }
    return true;
}

namespace {

// log of the mean of |v|^p over a range (log-sum-exp).
double log_power_mean(const std::vector<double>& v, double p) {
    LogSum acc;
    for (double x : v) acc.add(LogValue::from_log(p * std::log(std::abs(x))) );
    const LogValue s = acc.result();
    return (s.is_zero() ? -inf : s.log_abs) - std::log(static_cast<double>(v.size()));
}

double plain_mean(const std::vector<double>& v, const ConvexFunctional& phi) {
    double acc = 0.0;
    for (double x : v) acc += phi(std::abs(x));
    return acc / static_cast<double>(v.size());
}

} // namespace

PhiBounds phi_average_bounds(const Kernel& kernel, const Trajectory& x, const Trajectory& H,
                             const ConvexFunctional& phi) {
    const std::size_t end = std::min(x.end_index(), H.end_index());
    const std::size_t first = std::max<std::size_t>({x.start(), H.start(), 1});
    if (end <= first) throw InputError("phi_average_bounds: x and H share no indices >= 1");
    const std::size_t from = std::max(first, end / 4);

    const double r1 = resolvent_l1(kernel, x.end_index() - 1);
    const double k1 = kernel.l1_norm();
    std::vector<double> xs, hs, rh, kx;
    for (std::size_t n = from; n < end; ++n) {
        xs.push_back(x[n]);
        hs.push_back(H[n]);
        rh.push_back(r1 * H[n]);
        kx.push_back((1.0 + k1) * x[n]);
    }

    PhiBounds out;
    out.lhs = plain_mean(xs, phi);
    out.rhs = plain_mean(rh, phi);
    out.dual_lhs = plain_mean(hs, phi);
    out.dual_rhs = plain_mean(kx, phi);
    const bool overflow = !std::isfinite(out.lhs) || !std::isfinite(out.rhs) || !std::isfinite(out.dual_lhs) ||
                          !std::isfinite(out.dual_rhs);
    const double tol = std::log1p(1e-6);
    if (overflow) {
        if (phi.kind() != ConvexFunctional::Kind::power)
            throw OverflowError("phi time average overflowed; log-domain fallback exists only for power functionals", -1);
        const double p = phi.parameter();
        out.log_domain = true;
        out.log_lhs = log_power_mean(xs, p);
        out.log_rhs = log_power_mean(rh, p);
        out.log_dual_lhs = log_power_mean(hs, p);
        out.log_dual_rhs = log_power_mean(kx, p);
        out.holds = out.log_lhs <= out.log_rhs + tol;
        out.dual_holds = out.log_dual_lhs <= out.log_dual_rhs + tol;
    } else {
        out.log_lhs = std::log(out.lhs);
        out.log_rhs = std::log(out.rhs);
        out.log_dual_lhs = std::log(out.dual_lhs);
        out.log_dual_rhs = std::log(out.dual_rhs);
        out.holds = out.lhs <= out.rhs * (1.0 + 1e-6);
        out.dual_holds = out.dual_lhs <= out.dual_rhs * (1.0 + 1e-6);
    }
    return out;
}

} // namespace volterra::asymptotics
