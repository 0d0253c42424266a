#pragma once

// Finite-window estimators for ratio limits, growth relative to a scaling
// sequence a, and the periodic and time-averaged structure of g/a, plus checks
// of the asymptotic representations of x/a and H/a through the resolvent and
// the kernel.
//
// Every "limit" here is an estimate over a tail window. Conventions:
//   * tail window      = last 25% of the available indices;
//   * dyadic blocks    = end-aligned [ceil(N/2^(i+1)), ceil(N/2^i)), i = 0, 1, ...;
//   * burn-in          = the earliest 25% of those blocks (at least three kept).

#include "volterra/catalogue.hpp"
#include "volterra/kernel.hpp"
#include "volterra/trajectory.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace volterra::asymptotics {

/// Reference sequence a > 0 with ratio limit lambda = lim a(n-1)/a(n).
struct ScalingModel {
    LogTrajectory a;
    double lambda = 1.0;
    bool monotone = false;
    std::string tag = "custom";

    static ScalingModel from_catalogue(const GrowthCatalogue& member, std::size_t horizon);
    static ScalingModel custom(const Trajectory& a, double lambda, std::string tag = "custom");
    static ScalingModel custom_log(LogTrajectory a, double lambda, std::string tag = "custom");
    /// a(n) = sqrt(2 log max(n, 3)), lambda = 1: the normal-noise envelope.
    static ScalingModel sqrt_two_log(std::size_t horizon);

    /// g(n)/a(n) over the common index range.
    Trajectory ratio(const Trajectory& g) const;
    Trajectory ratio(const LogTrajectory& g) const;
};

// ---------------------------------------------------------------- lambda

struct LambdaEstimate {
    double lambda_hat = 0.0;
    bool converged = false;
    double iqr = 0.0;  ///< interquartile range of the tail ratios
};

/// Median of g(n-1)/g(n) over the last 25% of indices; converged when IQR < 1e-3.
/// Throws InputError when g vanishes on the tail window.
LambdaEstimate estimate_lambda(const Trajectory& g);
LambdaEstimate estimate_lambda(const LogTrajectory& g);

// ---------------------------------------------------------------- limsup

enum class Growth { zero, finite_positive, infinite };
std::string to_string(Growth g);

struct LimsupOptions {
    double burn_in_fraction = 0.25;
    double zero_threshold = 1e-3;  ///< epsilon_0, relative to the peak block maximum
    double growth_factor = 2.0;    ///< last/third-last block maximum for "infinite"
};

struct Block {
    std::size_t begin = 0;
    std::size_t end = 0;
    double max = 0.0;
};

struct LimsupEstimate {
    /// max of post-burn-in block maxima; +inf when classified infinite.
    double value = 0.0;
    /// max of post-burn-in block maxima, always finite.
    double observed = 0.0;
    Growth classification = Growth::finite_positive;
    std::vector<Block> blocks;  ///< post-burn-in blocks, oldest first
};

/// Dyadic blocks of [first, end) in time order; the oldest blocks are dropped
/// per burn_in_fraction.
std::vector<Block> dyadic_blocks(std::size_t first, std::size_t end, double burn_in_fraction = 0.25);

/// Classification of |ratio(n)| from its post-burn-in dyadic block maxima.
LimsupEstimate estimate_limsup_of_ratio(const Trajectory& ratio, const LimsupOptions& options = {});
/// limsup |g(n)|/a(n) estimate; ranges must overlap from index 1.
LimsupEstimate estimate_limsup(const Trajectory& g, const ScalingModel& scale, const LimsupOptions& options = {});
LimsupEstimate estimate_limsup(const LogTrajectory& g, const ScalingModel& scale, const LimsupOptions& options = {});

// ---------------------------------------------------------------- ratio-limit growth

struct Growth2Result {
    double L_empirical = 0.0;  ///< mean of x(n)/H(n) over the tail window
    double L_theory = 0.0;     ///< multiplier_L(kernel, lambda_hat)
    double residual = 0.0;
    LambdaEstimate lambda;
    bool summable = true;
    Trajectory x_over_H;
};

/// Solves in log form from H (indices 1..N), then compares x/H with L.
/// Throws InputError if H vanishes on the tail window.
Growth2Result verify_growth2(const Kernel& kernel, const LogTrajectory& forcing, double xi);

// ---------------------------------------------------------------- bounded g/a

/// h(n) + sum_{j=1}^{n} r(j) lambda^j h(n-j) with h = H/a, over h's range
/// (indices below its start are treated as absent). O(N^2).
Trajectory predict_x_over_a(const Trajectory& resolvent, double lambda, const Trajectory& H_over_a);

/// y(n) - sum_{j=0}^{n-1} k(j) lambda^(j+1) y(n-j-1) with y = x/a.
Trajectory predict_H_over_a(const Kernel& kernel, double lambda, const Trajectory& x_over_a);

/// sup |a(n) - b(n)| over the last 25% of the common range.
double tail_sup_difference(const Trajectory& a, const Trajectory& b);

/// sup |a - b| over each of the last `count` dyadic blocks, oldest first.
std::vector<double> block_sup_differences(const Trajectory& a, const Trajectory& b, std::size_t count = 3);

struct DecompositionReport {
    Trajectory g_over_a;
    Trajectory predicted;
    double residual_sup = 0.0;  ///< over the final 25% of indices
    std::vector<double> block_residuals;
};

struct Growth3Result {
    DecompositionReport x_side;  ///< g_over_a = x/a, predicted from H/a
    DecompositionReport H_side;  ///< g_over_a = H/a, predicted from x/a
};

/// x solved in log form; lambda taken from the scaling model.
Growth3Result verify_growth3(const Kernel& kernel, const LogTrajectory& forcing, double xi,
                             const ScalingModel& scale);

// ---------------------------------------------------------------- periodic g/a

struct PeriodicExtraction {
    std::size_t period = 0;  ///< 0 when no periodicity was detected
    bool periodic = false;
    std::vector<double> pi_values;  ///< pi(m) for residue m mod period (or the single tail mean)
    Trajectory pi;                  ///< periodic extension over the input range
    Trajectory residual;            ///< input - pi
    double residual_tail_sup = 0.0;
    double peak_ratio = 0.0;  ///< spectral peak / median magnitude
};

/// Residue-class means over the tail window. Without a hint the period comes
/// from the dominant DFT peak of the (mean-removed) tail window, restricted to
/// integer periods <= N/8; a peak under 3x the median magnitude means "not
/// periodic" and pi is the constant tail mean.
PeriodicExtraction extract_almost_periodic(const Trajectory& g_over_a, std::optional<std::size_t> period_hint = {});

/// pi_x(m) = sum_{j>=0} r(j) lambda^j pi_H(m-j) for a periodic pi_H (one period, residues 0..p-1).
std::vector<double> periodic_image(const Trajectory& resolvent, double lambda, const std::vector<double>& pi_H);

// ---------------------------------------------------------------- averaged g/a

/// (1/n) sum_{j=1}^{n} g_over_a(j), defined from index 1.
Trajectory time_average(const Trajectory& g_over_a);

// ---------------------------------------------------------------- fluctuations

struct FluctuationReport {
    LimsupEstimate x;
    LimsupEstimate H;
    double r_l1 = 0.0;
    double k_l1 = 0.0;
    bool upper_x_holds = false;  ///< limsup|x|/a <= (1+slack) |r|_1 limsup|H|/a
    bool upper_H_holds = false;  ///< limsup|H|/a <= (1+slack) (1+|k|_1) limsup|x|/a
    bool classes_agree = false;
};

/// x and H on the same scale; |r|_1 summed up to x's horizon.
FluctuationReport fluctuation_bounds(const Kernel& kernel, const Trajectory& x, const Trajectory& H,
                                     const ScalingModel& scale, double slack = 0.05,
                                     const LimsupOptions& options = {});

struct ConvolutionBound {
    double lhs = 0.0;    ///< post-burn-in max of |sum_{j=1}^{n} k(n-j) H(j)| / a(n)
    double bound = 0.0;  ///< |k|_1 * limsup|H|/a (observed)
    bool holds = false;
};

/// Growth of a kernel-weighted convolution at scale a.
ConvolutionBound convolution_bound(const Kernel& kernel, const Trajectory& H, const ScalingModel& scale,
                                   double slack = 0.05, const LimsupOptions& options = {});

// ---------------------------------------------------------------- phi time averages

class ConvexFunctional {
public:
    enum class Kind { power, exponential, hinge };

    static ConvexFunctional power(double p);  ///< x^p, p >= 1
    static ConvexFunctional exponential();    ///< e^x - 1
    static ConvexFunctional hinge(double c);  ///< max(0, x - c), c >= 0

    double operator()(double x) const noexcept;
    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return param_; }
    std::string name() const;

    /// Sampled check on [0, upper]: nondecreasing and second differences >= -1e-12.
    bool increasing_convex(double upper = 100.0, std::size_t samples = 1000) const;
    /// Powers and hinges are O-regularly varying; the exponential is not.
    bool o_regularly_varying() const noexcept { return kind_ != Kind::exponential; }

private:
    ConvexFunctional(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

struct PhiBounds {
    double lhs = 0.0;  ///< tail mean of phi(|x|)
    double rhs = 0.0;  ///< tail mean of phi(|r|_1 |H|)
    bool holds = false;
    double dual_lhs = 0.0;  ///< tail mean of phi(|H|)
    double dual_rhs = 0.0;  ///< tail mean of phi((1+|k|_1)|x|)
    bool dual_holds = false;
    /// Power functionals whose means overflow are compared in log form;
    /// lhs/rhs are then +inf and the log_* fields carry the values.
    bool log_domain = false;
    double log_lhs = 0.0, log_rhs = 0.0, log_dual_lhs = 0.0, log_dual_rhs = 0.0;
};

/// Means over the window n in [max(1, N/4), N] shared by x and H.
PhiBounds phi_average_bounds(const Kernel& kernel, const Trajectory& x, const Trajectory& H,
                             const ConvexFunctional& phi);

/// |r|_1 over r(0..horizon).
double resolvent_l1(const Kernel& kernel, std::size_t horizon);

} // namespace volterra::asymptotics
