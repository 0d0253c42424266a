#include "volterra/core.hpp"

#include "volterra/diagnostics.hpp"
#include "volterra/error.hpp"

#include <algorithm>
#include <cmath>

namespace volterra {

namespace {

bool nonzero(double v) { return v != 0.0; }
bool nonzero(const LogValue& v) { return !v.is_zero(); }

template <typename T>
void check_forcing(const T& forcing, std::size_t horizon, const char* who) {
    if (horizon < 1) throw InputError(std::string(who) + ": horizon must be >= 1");
    if (forcing.start() > 1)
        throw InputError(std::string(who) + ": forcing must be defined from index 1 (starts at " +
                         std::to_string(forcing.start()) + ")");
    if (forcing.end_index() < horizon + 1)
        throw InputError(std::string(who) + ": forcing defined up to index " +
                         std::to_string(forcing.end_index() == 0 ? 0 : forcing.end_index() - 1) +
                         ", horizon needs " + std::to_string(horizon));
    if (forcing.start() == 0 && forcing.size() > 0 && nonzero(forcing[0]))
        warn(std::string(who) + ": nonzero forcing value at index 0 is ignored (H is consumed from index 1)");
}

// Shared by the linear and nonlinear solvers so f = identity reproduces the
// linear recursion operation for operation.
template <typename Transform>
Trajectory recurse(const Kernel& kernel, const Trajectory& forcing, double xi, std::size_t horizon,
                   Transform&& transform) {
    if (!std::isfinite(xi)) throw OverflowError("initial value xi is not finite", 0);
    const std::size_t m = kernel.size();
    std::vector<double> x(horizon + 1);
    std::vector<double> fx(horizon + 1);
    x[0] = xi;
    fx[0] = transform(xi);
    for (std::size_t n = 0; n < horizon; ++n) {
        double acc = 0.0;
        const std::size_t lo = (m == 0 || n + 1 <= m) ? 0 : n + 1 - m;
        if (m > 0) {
            for (std::size_t j = lo; j <= n; ++j) acc += kernel(n - j) * fx[j];
        }
        const double next = acc + forcing[n + 1];
        if (!std::isfinite(next))
            throw OverflowError("solution overflowed", static_cast<std::ptrdiff_t>(n + 1));
        x[n + 1] = next;
        fx[n + 1] = transform(next);
    }
    return Trajectory(0, std::move(x));
}

} // namespace

Trajectory solve_linear(const Kernel& kernel, const Trajectory& forcing, double xi, std::size_t horizon) {
    check_forcing(forcing, horizon, "solve_linear");
    return recurse(kernel, forcing, xi, horizon, [](double v) { return v; });
}

LogTrajectory solve_linear_log(const Kernel& kernel, const LogTrajectory& forcing, double xi,
                               std::size_t horizon) {
    check_forcing(forcing, horizon, "solve_linear_log");
    if (!std::isfinite(xi)) throw OverflowError("initial value xi is not finite", 0);
    const std::size_t m = kernel.size();
    std::vector<LogValue> logk(m);
    for (std::size_t l = 0; l < m; ++l) logk[l] = LogValue::from_double(kernel(l));

    std::vector<LogValue> x(horizon + 1);
    x[0] = LogValue::from_double(xi);
    for (std::size_t n = 0; n < horizon; ++n) {
        LogSum acc;
        const std::size_t lo = (m == 0 || n + 1 <= m) ? 0 : n + 1 - m;
        if (m > 0) {
            for (std::size_t j = lo; j <= n; ++j) acc.add(logk[n - j] * x[j]);
        }
        acc.add(forcing[n + 1]);
        const LogValue next = acc.result();
        if (!next.is_zero() && !std::isfinite(next.log_abs))
            throw OverflowError("log-domain solution overflowed", static_cast<std::ptrdiff_t>(n + 1));
        x[n + 1] = next;
    }
    return LogTrajectory(0, std::move(x));
}

Trajectory resolvent(const Kernel& kernel, std::size_t horizon) {
    const std::size_t m = kernel.size();
    std::vector<double> r(horizon + 1, 0.0);
    r[0] = 1.0;
    for (std::size_t n = 0; n < horizon; ++n) {
        double acc = 0.0;
        const std::size_t lo = (m == 0 || n + 1 <= m) ? 0 : n + 1 - m;
        if (m > 0) {
            for (std::size_t j = lo; j <= n; ++j) acc += kernel(n - j) * r[j];
        }
        if (!std::isfinite(acc)) throw OverflowError("resolvent overflowed", static_cast<std::ptrdiff_t>(n + 1));
        r[n + 1] = acc;
    }
    return Trajectory(0, std::move(r));
}

Trajectory solve_by_representation(const Kernel& kernel, const Trajectory& forcing, double xi,
                                   std::size_t horizon) {
    check_forcing(forcing, horizon, "solve_by_representation");
    if (!std::isfinite(xi)) throw OverflowError("initial value xi is not finite", 0);
    const Trajectory r = resolvent(kernel, horizon);
    std::vector<double> x(horizon + 1);
    x[0] = xi;
    for (std::size_t n = 1; n <= horizon; ++n) {
        double acc = r[n] * xi;
        for (std::size_t j = 1; j <= n; ++j) acc += r[n - j] * forcing[j];
        if (!std::isfinite(acc)) throw OverflowError("representation overflowed", static_cast<std::ptrdiff_t>(n));
        x[n] = acc;
    }
    return Trajectory(0, std::move(x));
}

Trajectory recover_forcing(const Kernel& kernel, const Trajectory& solution) {
    if (solution.start() != 0) throw InputError("recover_forcing: solution must start at index 0");
    if (solution.size() < 2) return Trajectory(1, {});
    const std::size_t m = kernel.size();
    const std::size_t last = solution.size() - 1;
    std::vector<double> h(last);
    for (std::size_t n = 0; n < last; ++n) {
        double acc = 0.0;
        const std::size_t lo = (m == 0 || n + 1 <= m) ? 0 : n + 1 - m;
        if (m > 0) {
            for (std::size_t j = lo; j <= n; ++j) acc += kernel(n - j) * solution[j];
        }
        h[n] = solution[n + 1] - acc;
    }
    return Trajectory(1, std::move(h));
}

Trajectory solve_nonlinear(const Kernel& kernel, const Nonlinearity& f, const Trajectory& forcing, double xi,
                           std::size_t horizon) {
    check_forcing(forcing, horizon, "solve_nonlinear");
    return recurse(kernel, forcing, xi, horizon, [&f](double v) {
        const double out = f(v);
        if (!std::isfinite(out)) throw NonlinearityError("nonlinearity '" + f.name() + "' returned a non-finite value", v);
        return out;
    });
}

double max_relative_gap(const Trajectory& a, const Trajectory& b) {
    const std::size_t from = std::max(a.start(), b.start());
    const std::size_t to = std::min(a.end_index(), b.end_index());
    double worst = 0.0;
    for (std::size_t n = from; n < to; ++n) {
        const double scale = std::max({1.0, std::abs(a[n]), std::abs(b[n])});
        worst = std::max(worst, std::abs(a[n] - b[n]) / scale);
    }
    return worst;
}

} // namespace volterra
