#include "volterra/tail_model.hpp"

#include "volterra/envelope.hpp"
#include "volterra/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace volterra::stochastic {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
const double log_half = std::log(0.5);

double safe_log(double v) { return v > 0.0 ? std::log(v) : -inf; }

// Linear interpolation of ys over xs (both increasing) at t, clamped.
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double t) {
    if (t <= xs.front()) return ys.front();
    if (t >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), t);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    const double w = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

} // namespace

TailModel TailModel::normal(double sigma) {
    require(std::isfinite(sigma) && sigma > 0.0, "normal tail model needs sigma > 0");
    return TailModel(Family::normal, sigma, 0.0, 0.0);
}

TailModel TailModel::symmetric_power(double alpha, double c_lower, double c_upper) {
    require(std::isfinite(alpha) && alpha > 0.0, "symmetric-power tail model needs alpha > 0");
    require(c_lower > 0.0 && c_upper > 0.0 && c_lower + c_upper <= 1.0,
            "symmetric-power tail model needs c_lower, c_upper > 0 with c_lower + c_upper <= 1");
    return TailModel(Family::symmetric_power, alpha, c_lower, c_upper);
}

TailModel TailModel::weibull(double scale, double shape) {
    require(std::isfinite(scale) && scale > 0.0, "weibull tail model needs scale > 0");
    require(std::isfinite(shape) && shape > 0.0, "weibull tail model needs shape > 0");
    return TailModel(Family::weibull, scale, shape, 0.0);
}

TailModel TailModel::uniform(double half_width) {
    require(std::isfinite(half_width) && half_width > 0.0, "uniform tail model needs half_width > 0");
    return TailModel(Family::uniform, half_width, 0.0, 0.0);
}

TailModel TailModel::custom_quantile(std::vector<double> probabilities, std::vector<double> values) {
    require(probabilities.size() >= 2 && probabilities.size() == values.size(),
            "custom-quantile table needs at least two (probability, value) pairs of equal length");
    require(probabilities.front() == 0.0 && probabilities.back() == 1.0,
            "custom-quantile probabilities must run from 0 to 1");
    for (std::size_t i = 1; i < values.size(); ++i) {
        require(probabilities[i] > probabilities[i - 1], "custom-quantile probabilities must be strictly increasing");
        require(values[i] > values[i - 1], "custom-quantile values must be strictly increasing");
    }
    for (double v : values) require(std::isfinite(v), "custom-quantile values must be finite");
    TailModel t(Family::custom_quantile, 0.0, 0.0, 0.0);
    t.table_u_ = std::move(probabilities);
    t.table_x_ = std::move(values);
    return t;
}

std::string TailModel::name() const {
    switch (family_) {
    case Family::normal: return "normal";
    case Family::symmetric_power: return "symmetric-power";
    case Family::weibull: return "weibull";
    case Family::uniform: return "uniform";
    case Family::custom_quantile: return "custom-quantile";
    }
    return "normal";
}

bool TailModel::symmetric() const noexcept {
    switch (family_) {
    case Family::symmetric_power: return p2_ == p3_;
    case Family::custom_quantile: {
        const std::size_t n = table_u_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(table_u_[i] + table_u_[n - 1 - i] - 1.0) > 1e-12) return false;
            if (std::abs(table_x_[i] + table_x_[n - 1 - i]) > 1e-12 * std::max(1.0, std::abs(table_x_[i])))
                return false;
        }
        return true;
    }
    default: return true;
    }
}

double TailModel::cdf(double x) const {
    switch (family_) {
    case Family::normal: return 0.5 * std::erfc(-x / (p1_ * std::numbers::sqrt2));
    case Family::symmetric_power:
        if (x <= -1.0) return p2_ * std::pow(-x, -p1_);
        if (x >= 1.0) return 1.0 - p3_ * std::pow(x, -p1_);
        return p2_ + 0.5 * (x + 1.0) * (1.0 - p2_ - p3_);
    case Family::weibull:
        if (x < 0.0) return 0.5 * std::exp(-std::pow(-x / p1_, p2_));
        return 1.0 - 0.5 * std::exp(-std::pow(x / p1_, p2_));
    case Family::uniform: return std::clamp((x + p1_) / (2.0 * p1_), 0.0, 1.0);
    case Family::custom_quantile:
        if (x <= table_x_.front()) return 0.0;
        if (x >= table_x_.back()) return 1.0;
        return interpolate(table_x_, table_u_, x);
    }
    return 0.0;
}

double TailModel::sf(double x) const {
    switch (family_) {
    case Family::normal: return 0.5 * std::erfc(x / (p1_ * std::numbers::sqrt2));
    case Family::symmetric_power:
        if (x >= 1.0) return p3_ * std::pow(x, -p1_);
        if (x <= -1.0) return 1.0 - p2_ * std::pow(-x, -p1_);
        return 1.0 - cdf(x);
    case Family::weibull:
        if (x >= 0.0) return 0.5 * std::exp(-std::pow(x / p1_, p2_));
        return 1.0 - 0.5 * std::exp(-std::pow(-x / p1_, p2_));
    case Family::uniform: return std::clamp((p1_ - x) / (2.0 * p1_), 0.0, 1.0);
    case Family::custom_quantile: return 1.0 - cdf(x);
    }
    return 0.0;
}

double TailModel::log_sf(double x) const {
    switch (family_) {
    case Family::normal: {
        const double z = x / (p1_ * std::numbers::sqrt2);
        if (z < 25.0) return std::log(0.5 * std::erfc(z));
        // Asymptotic expansion of erfc.
        const double z2 = z * z;
        const double series = -0.5 / z2 + 0.75 / (z2 * z2) - 1.875 / (z2 * z2 * z2);
        return -z2 - std::log(z * std::sqrt(std::numbers::pi)) + std::log1p(series) + log_half;
    }
    case Family::symmetric_power:
        if (x >= 1.0) return std::log(p3_) - p1_ * std::log(x);
        return safe_log(sf(x));
    case Family::weibull:
        if (x >= 0.0) return log_half - std::pow(x / p1_, p2_);
        return safe_log(sf(x));
    default: return safe_log(sf(x));
    }
}

double TailModel::log_cdf(double x) const {
    switch (family_) {
    case Family::normal: return log_sf(-x);
    case Family::symmetric_power:
        if (x <= -1.0) return std::log(p2_) - p1_ * std::log(-x);
        return safe_log(cdf(x));
    case Family::weibull:
        if (x <= 0.0) return log_half - std::pow(-x / p1_, p2_);
        return safe_log(cdf(x));
    default: return safe_log(cdf(x));
    }
}

double TailModel::two_sided_tail(double x) const { return sf(x) + cdf(-x); }

double TailModel::normal_upper_quantile_log_p(double log_p) const {
    if (log_p > log_half) {
        // p > 1/2: reflect.
        return -normal_upper_quantile_log_p(std::log(-std::expm1(log_p)));
    }
    const double sigma = p1_;
    const double log_norm = std::log(sigma * std::sqrt(2.0 * std::numbers::pi));
    // log G is concave, so Newton from the right of the root stays there.
    double x = sigma * std::sqrt(-2.0 * log_p);
    for (int it = 0; it < 200; ++it) {
        const double lg = log_sf(x);
        const double log_pdf = -0.5 * (x / sigma) * (x / sigma) - log_norm;
        const double slope = -std::exp(log_pdf - lg);
        const double step = (lg - log_p) / slope;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

double TailModel::upper_quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw InputError("upper_quantile: p must lie in (0,1)");
    switch (family_) {
    case Family::normal: return normal_upper_quantile_log_p(std::log(p));
    case Family::symmetric_power: {
        const double alpha = p1_, cl = p2_, cu = p3_;
        if (p <= cu) return std::pow(cu / p, 1.0 / alpha);
        if (p >= 1.0 - cl) return -std::pow(cl / (1.0 - p), 1.0 / alpha);
        return -1.0 + 2.0 * (1.0 - p - cl) / (1.0 - cl - cu);
    }
    case Family::weibull:
        if (p <= 0.5) return p1_ * std::pow(std::log(0.5 / p), 1.0 / p2_);
        return -p1_ * std::pow(std::log(0.5 / (1.0 - p)), 1.0 / p2_);
    case Family::uniform: return p1_ * (1.0 - 2.0 * p);
    case Family::custom_quantile: return interpolate(table_u_, table_x_, 1.0 - p);
    }
    return 0.0;
}

double TailModel::log_upper_quantile(double log_p) const {
    if (!(log_p < 0.0)) throw InputError("log_upper_quantile: log_p must be negative");
    double q = 0.0;
    switch (family_) {
    case Family::normal:
        if (log_p < log_half) return std::log(normal_upper_quantile_log_p(log_p));
        q = normal_upper_quantile_log_p(log_p);
        break;
    case Family::symmetric_power:
        if (log_p <= std::log(p3_)) return (std::log(p3_) - log_p) / p1_;
        q = upper_quantile(std::exp(log_p));
        break;
    case Family::weibull:
        if (log_p < log_half) return std::log(p1_) + std::log(log_half - log_p) / p2_;
        q = upper_quantile(std::exp(log_p));
        break;
    case Family::uniform: return std::log(p1_) + std::log1p(-2.0 * std::exp(log_p));
    case Family::custom_quantile: q = upper_quantile(std::exp(log_p)); break;
    }
    if (!(q > 0.0)) throw InputError("log_upper_quantile: quantile is not positive at this level");
    return std::log(q);
}

double TailModel::lower_quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw InputError("lower_quantile: u must lie in (0,1)");
    switch (family_) {
    case Family::normal: return -normal_upper_quantile_log_p(std::log(u));
    case Family::symmetric_power: {
        const double alpha = p1_, cl = p2_, cu = p3_;
        if (u <= cl) return -std::pow(cl / u, 1.0 / alpha);
        if (u >= 1.0 - cu) return std::pow(cu / (1.0 - u), 1.0 / alpha);
        return -1.0 + 2.0 * (u - cl) / (1.0 - cl - cu);
    }
    case Family::weibull:
        if (u < 0.5) return -p1_ * std::pow(std::log(0.5 / u), 1.0 / p2_);
        return p1_ * std::pow(std::log(0.5 / (1.0 - u)), 1.0 / p2_);
    case Family::uniform: return p1_ * (2.0 * u - 1.0);
    case Family::custom_quantile: return interpolate(table_u_, table_x_, u);
    }
    return 0.0;
}

double TailModel::sample(const CounterStream& stream, std::uint64_t index) const {
    if (family_ == Family::normal) return p1_ * stream.normal(index);
    return lower_quantile(stream.uniform(index));
}

// ---------------------------------------------------------------- classification

std::string to_string(TailVerdict v) {
    switch (v) {
    case TailVerdict::rapid: return "rapid";
    case TailVerdict::regularly_varying: return "regularly-varying";
    case TailVerdict::undecided: return "undecided";
    }
    return "undecided";
}

std::string to_string(RvCase c) {
    switch (c) {
    case RvCase::none: return "none";
    case RvCase::infinite_ratio: return "i";
    case RvCase::zero_ratio: return "ii";
    case RvCase::finite_ratio: return "iii";
    }
    return "none";
}

namespace {

SsvCertificate ssv_certificate(const TailModel& tail, const ClassifyOptions& o) {
    SsvCertificate c;
    auto deviation = [&](double x) {
        const double lx = std::log(x);
        const double log_mu = o.beta * std::log(lx);
        try {
            const double base = tail.log_upper_quantile(-lx);
            const double shifted = tail.log_upper_quantile(-lx - o.delta_star * log_mu);
            return std::abs(std::exp(shifted - base) - 1.0);
        } catch (const Error&) {
            return inf;
        }
    };
    for (double x : o.near_points) c.near_deviation.push_back(deviation(x));
    for (double x : o.far_points) c.far_deviation.push_back(deviation(x));

    c.near_decreasing = std::all_of(c.near_deviation.begin(), c.near_deviation.end(),
                                    [](double d) { return std::isfinite(d); });
    for (std::size_t i = 1; i < c.near_deviation.size(); ++i)
        if (c.near_deviation[i] > c.near_deviation[i - 1] * (1.0 + 1e-12)) c.near_decreasing = false;
    c.far_within = std::all_of(c.far_deviation.begin(), c.far_deviation.end(),
                               [&](double d) { return d < o.threshold; });

    std::vector<double> summands;
    summands.reserve(o.series_horizon);
    for (std::size_t n = 3; n <= o.series_horizon; ++n) {
        const double dn = static_cast<double>(n);
        summands.push_back(1.0 / (dn * std::pow(std::log(dn), o.beta * o.delta_star)));
    }
    const auto fit = classify_series(summands, 3);
    c.series_slope = fit.slope;
    c.series_convergent = fit.verdict == SeriesVerdict::convergent;
    c.passed = c.near_decreasing && c.far_within && c.series_convergent;
    return c;
}

RvCertificate rv_certificate(const TailModel& tail, const ClassifyOptions& o) {
    RvCertificate c;
    auto slope = [&](double y1, double y2) {
        return (tail.log_sf(y2) - tail.log_sf(y1)) / (std::log(y2) - std::log(y1));
    };
    c.slope_near = slope(1e100, 1e150);
    c.slope_far = slope(1e200, 1e250);
    c.log_ratio_near = tail.log_sf(1e200) - tail.log_cdf(-1e200);
    c.log_ratio_far = tail.log_sf(1e250) - tail.log_cdf(-1e250);
    c.passed = std::isfinite(c.slope_near) && std::isfinite(c.slope_far) && c.slope_far < 0.0 &&
               std::abs(c.slope_near - c.slope_far) <= o.rv_slope_tolerance * std::abs(c.slope_far);
    return c;
}

} // namespace

TailClassification classify_tail(const TailModel& tail, const ClassifyOptions& options) {
    TailClassification out;
    out.ssv = ssv_certificate(tail, options);
    out.rv = rv_certificate(tail, options);
    if (out.ssv.passed == out.rv.passed) return out;  // conflicting or neither
    if (out.ssv.passed) {
        out.verdict = TailVerdict::rapid;
        return out;
    }
    out.alpha = -out.rv.slope_far;
    const double near = out.rv.log_ratio_near, far = out.rv.log_ratio_far;
    const double big = std::log(1e6);
    if (std::isfinite(near) && std::isfinite(far) && std::abs(far - near) <= 0.05 * std::max(1.0, std::abs(far))) {
        out.rv_case = RvCase::finite_ratio;
        out.L = std::exp(far);
    } else if (far > near && far > big) {
        out.rv_case = RvCase::infinite_ratio;
    } else if (far < near && far < -big) {
        out.rv_case = RvCase::zero_ratio;
    } else {
        return out;  // no stable ratio limit
    }
    out.verdict = TailVerdict::regularly_varying;
    return out;
}

} // namespace volterra::stochastic
