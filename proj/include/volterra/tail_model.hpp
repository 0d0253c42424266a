#pragma once

#include "volterra/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace volterra::stochastic {

/// Distribution of a single noise term, described through F, G = 1 - F and
/// the upper-tail quantile G^{-1}. Log-space variants reach far into the tail.
///
/// symmetric-power: F(-x) = c_lower x^-alpha and G(x) = c_upper x^-alpha for
/// x >= 1, linear F in between.
/// weibull: one-sided law exp(-(x/scale)^shape) with half the mass reflected
/// to the negative axis.
/// custom-quantile: F^{-1} given by a table (u_i, x_i), u from 0 to 1,
/// linear in between.
class TailModel {
public:
    enum class Family { normal, symmetric_power, weibull, uniform, custom_quantile };

    static TailModel normal(double sigma = 1.0);
    static TailModel symmetric_power(double alpha, double c_lower = 0.5, double c_upper = 0.5);
    static TailModel weibull(double scale, double shape);
    static TailModel uniform(double half_width = 1.0);
    static TailModel custom_quantile(std::vector<double> probabilities, std::vector<double> values);

    Family family() const noexcept { return family_; }
    std::string name() const;
    bool symmetric() const noexcept;

    double sigma() const noexcept { return p1_; }
    double alpha() const noexcept { return p1_; }
    double c_lower() const noexcept { return p2_; }
    double c_upper() const noexcept { return p3_; }
    double scale() const noexcept { return p1_; }
    double shape() const noexcept { return p2_; }
    double half_width() const noexcept { return p1_; }
    const std::vector<double>& table_probabilities() const noexcept { return table_u_; }
    const std::vector<double>& table_values() const noexcept { return table_x_; }

    double cdf(double x) const;
    double sf(double x) const;
    double log_sf(double x) const;
    /// log F(x), accurate far in the lower tail.
    double log_cdf(double x) const;
    /// P(|Z| > x) = G(x) + F(-x).
    double two_sided_tail(double x) const;

    /// G^{-1}(p) for p in (0,1).
    double upper_quantile(double p) const;
    /// log G^{-1}(exp(log_p)); needs G^{-1} > 0 there.
    double log_upper_quantile(double log_p) const;
    /// F^{-1}(u) for u in (0,1).
    double lower_quantile(double u) const;

    /// Draw number `index` of the stream.
    double sample(const CounterStream& stream, std::uint64_t index) const;

private:
    TailModel(Family f, double p1, double p2, double p3) : family_(f), p1_(p1), p2_(p2), p3_(p3) {}

    double normal_upper_quantile_log_p(double log_p) const;

    Family family_;
    double p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;
    std::vector<double> table_u_, table_x_;
};

enum class TailVerdict { rapid, regularly_varying, undecided };
enum class RvCase { none, infinite_ratio, zero_ratio, finite_ratio };

std::string to_string(TailVerdict v);
std::string to_string(RvCase c);

struct ClassifyOptions {
    double beta = 2.0;        ///< modulus mu(x) = log^beta x
    double delta_star = 0.6;  ///< needs beta * delta_star > 1 for the series check
    double threshold = 0.02;
    std::vector<double> near_points{1e3, 1e4, 1e5, 1e6};
    std::vector<double> far_points{1e200, 1e250, 1e300};
    std::size_t series_horizon = 1000000;
    double rv_slope_tolerance = 0.05;
};

/// Rapid-tail certificate: dev(x) = |G^{-1}(1/(x mu^delta*))/G^{-1}(1/x) - 1|.
struct SsvCertificate {
    std::vector<double> near_deviation;
    std::vector<double> far_deviation;
    bool near_decreasing = false;
    bool far_within = false;
    bool series_convergent = false;
    double series_slope = 0.0;
    bool passed = false;
};

/// Regular-variation certificate from log G against log y in two far ranges.
struct RvCertificate {
    double slope_near = 0.0;
    double slope_far = 0.0;
    double log_ratio_near = 0.0;  ///< log(G(y)/F(-y))
    double log_ratio_far = 0.0;
    bool passed = false;
};

struct TailClassification {
    TailVerdict verdict = TailVerdict::undecided;
    double alpha = 0.0;   ///< regularly varying only
    RvCase rv_case = RvCase::none;
    double L = 0.0;       ///< finite_ratio only: lim G(x)/F(-x)
    SsvCertificate ssv;
    RvCertificate rv;
};

/// Conflicting or missing certificates give `undecided`.
TailClassification classify_tail(const TailModel& tail, const ClassifyOptions& options = {});

} // namespace volterra::stochastic
