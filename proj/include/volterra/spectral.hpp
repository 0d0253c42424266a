#pragma once

#include "volterra/kernel.hpp"
#include "volterra/trajectory.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace volterra::spectral {

/// Roots on the open unit disc test use this margin; anything in the annulus
/// [1 - tol, 1 + tol] is reported as marginal.
inline constexpr double root_tolerance = 1e-9;
/// |1 - kappa| at or below this is treated as a singular multiplier.
inline constexpr double singular_tolerance = 1e-12;

enum class Verdict { summable, marginal, not_summable };

std::string to_string(Verdict v);

struct LambdaPoint {
    double lambda = 0.0;
    double kappa = 0.0;     ///< sum_{l<M} k(l) lambda^(l+1)
    double L = 0.0;         ///< 1 / (1 - kappa)
    double rho_star = 0.0;  ///< sum_{j <= horizon} r(j) lambda^j
    bool singular = false;
};

struct SpectralReport {
    std::vector<std::complex<double>> roots;
    double max_modulus = 0.0;
    Verdict verdict = Verdict::summable;
    bool summable = true;
    /// Worst backward error |p(z)| / sum |c_i| |z|^i over the polished roots.
    double max_backward_error = 0.0;
    /// Discarded kernel mass beyond the stored entries (0 for finite support).
    double tail_mass = 0.0;
    std::vector<LambdaPoint> lambda_points;
};

/// Roots of z^M - sum_{l<M} k(l) z^(M-1-l) via companion-matrix eigenvalues,
/// polished by Newton to backward error < 1e-12. Empty kernels are trivially
/// summable. Throws SpectralError when polishing fails after perturbed retries.
SpectralReport characteristic_roots(const Kernel& kernel);

/// kappa(lambda) = sum_{l<M} k(l) lambda^(l+1).
double kappa(const Kernel& kernel, double lambda);

struct Multiplier {
    double value = 1.0;
    double kappa = 0.0;
    /// False when the kernel is not (strictly) summable: the limit x/H -> L is not guaranteed.
    bool applicable = true;
};

/// L = 1/(1 - kappa(lambda)). Throws SingularMultiplierError when |1 - kappa| <= 1e-12.
Multiplier multiplier_L(const Kernel& kernel, double lambda);

struct RhoResult {
    Trajectory partial_sums;  ///< sum_{j<=n} r(j) lambda^j, n = 0..horizon
    double limit = 1.0;       ///< multiplier_L
    double final_gap = 0.0;   ///< |partial_sums(horizon) - limit|
    bool within_tolerance = true;
};

RhoResult rho_of_lambda(const Kernel& kernel, double lambda, std::size_t horizon, double tolerance = 1e-10);

/// characteristic_roots plus one LambdaPoint per grid value.
SpectralReport spectral_report(const Kernel& kernel, std::span<const double> lambda_grid, std::size_t horizon);

} // namespace volterra::spectral
