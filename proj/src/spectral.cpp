#include "volterra/spectral.hpp"

#include "volterra/core.hpp"
#include "volterra/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace volterra::spectral {

namespace {

using cplx = std::complex<double>;

// Monic coefficients c[0..M] of z^M - k(0) z^(M-1) - ... - k(M-1), highest power first.
std::vector<double> char_poly(const Kernel& kernel) {
    std::vector<double> c(kernel.size() + 1);
    c[0] = 1.0;
    for (std::size_t l = 0; l < kernel.size(); ++l) c[l + 1] = -kernel(l);
    return c;
}

struct Eval {
    cplx p;
    cplx dp;
    double scale;  // sum |c_i| |z|^i
};

Eval horner(const std::vector<double>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    double scale = 0.0;
    const double az = std::abs(z);
    for (double ci : c) {
        dp = dp * z + p;
        p = p * z + ci;
        scale = scale * az + std::abs(ci);
    }
    return {p, dp, scale};
}

double backward_error(const Eval& e) { return e.scale > 0.0 ? std::abs(e.p) / e.scale : 0.0; }

// Newton from z; returns the best iterate seen.
cplx polish(const std::vector<double>& c, cplx z, double& err) {
    Eval e = horner(c, z);
    err = backward_error(e);
    cplx best = z;
    for (int it = 0; it < 50 && err > 0.0; ++it) {
        if (std::abs(e.dp) == 0.0) break;
        z -= e.p / e.dp;
        e = horner(c, z);
        const double err_new = backward_error(e);
        if (!(err_new < err)) {
            if (err < 1e-14) break;
            continue;
        }
        err = err_new;
        best = z;
        if (err < 1e-15) break;
    }
    return best;
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::summable: return "summable";
    case Verdict::marginal: return "marginal";
    case Verdict::not_summable: return "not-summable";
    }
    return "summable";
}

SpectralReport characteristic_roots(const Kernel& kernel) {
    SpectralReport report;
    report.tail_mass = kernel.tail_bound();
    const std::size_t m = kernel.size();
    if (m == 0) return report;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t l = 0; l < m; ++l) companion(0, static_cast<Eigen::Index>(l)) = kernel(l);
    for (std::size_t i = 1; i < m; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw SpectralError("companion eigenvalue iteration did not converge");

    const auto c = char_poly(kernel);
    constexpr double accept = 1e-12;
    report.roots.reserve(m);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const cplx z0 = solver.eigenvalues()(i);
        double err = 0.0;
        cplx z = polish(c, z0, err);
        // Retries from perturbed starts.
        for (int attempt = 1; err >= accept && attempt <= 8; ++attempt) {
            const double angle = 0.7853981633974483 * attempt;
            const cplx start = z0 * (1.0 + 1e-6 * attempt * std::polar(1.0, angle)) + 1e-10 * std::polar(1.0, angle);
            double err_try = 0.0;
            const cplx z_try = polish(c, start, err_try);
            if (err_try < err) {
                err = err_try;
                z = z_try;
            }
        }
        if (err >= accept)
            throw SpectralError("root polishing did not reach backward error 1e-12 (got " + std::to_string(err) + ")");
        report.max_backward_error = std::max(report.max_backward_error, err);
        report.roots.push_back(z);
    }
    std::sort(report.roots.begin(), report.roots.end(),
              [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    report.max_modulus = std::abs(report.roots.front());
    if (report.max_modulus < 1.0 - root_tolerance)
        report.verdict = Verdict::summable;
    else if (report.max_modulus <= 1.0 + root_tolerance)
        report.verdict = Verdict::marginal;
    else
        report.verdict = Verdict::not_summable;
    report.summable = report.verdict == Verdict::summable;
    return report;
}

double kappa(const Kernel& kernel, double lambda) {
    double acc = 0.0;
    double power = lambda;
    for (std::size_t l = 0; l < kernel.size(); ++l) {
        acc += kernel(l) * power;
        power *= lambda;
    }
    return acc;
}

Multiplier multiplier_L(const Kernel& kernel, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("multiplier_L: lambda must lie in [0,1]");
    Multiplier out;
    out.kappa = kappa(kernel, lambda);
    const double denom = 1.0 - out.kappa;
    if (std::abs(denom) <= singular_tolerance)
        throw SingularMultiplierError("1 - sum k(l) lambda^(l+1) vanishes; the kernel cannot have a summable resolvent");
    out.value = 1.0 / denom;
    out.applicable = characteristic_roots(kernel).summable;
    return out;
}

RhoResult rho_of_lambda(const Kernel& kernel, double lambda, std::size_t horizon, double tolerance) {
    RhoResult out;
    out.limit = multiplier_L(kernel, lambda).value;
    const Trajectory r = resolvent(kernel, horizon);
    std::vector<double> partial(horizon + 1);
    double acc = 0.0;
    double power = 1.0;
    for (std::size_t j = 0; j <= horizon; ++j) {
        acc += r[j] * power;
        partial[j] = acc;
        power *= lambda;
    }
    out.partial_sums = Trajectory(0, std::move(partial));
    out.final_gap = std::abs(acc - out.limit);
    out.within_tolerance = out.final_gap < tolerance;
    return out;
}

SpectralReport spectral_report(const Kernel& kernel, std::span<const double> lambda_grid, std::size_t horizon) {
    SpectralReport report = characteristic_roots(kernel);
    // r grows geometrically for non-summable kernels; rho_star is then undefined (NaN).
    const Trajectory r = report.summable ? resolvent(kernel, horizon) : Trajectory{};
    for (double lambda : lambda_grid) {
        LambdaPoint pt;
        pt.lambda = lambda;
        pt.kappa = kappa(kernel, lambda);
        if (std::abs(1.0 - pt.kappa) <= singular_tolerance) {
            pt.singular = true;
        } else {
            pt.L = 1.0 / (1.0 - pt.kappa);
        }
        if (report.summable) {
            double acc = 0.0, power = 1.0;
            for (std::size_t j = 0; j <= horizon; ++j) {
                acc += r[j] * power;
                power *= lambda;
            }
            pt.rho_star = acc;
        } else {
            pt.rho_star = std::numeric_limits<double>::quiet_NaN();
        }
        report.lambda_points.push_back(pt);
    }
    return report;
}

} // namespace volterra::spectral
