#pragma once

// Finite-horizon solvers for the forced convolution equation
//
//   x(n+1) = sum_{j=0}^{n} k(n-j) f(x(j)) + H(n+1),   x(0) = xi,
//
// its resolvent r (H = 0, xi = 1, f = id) and the inverse map x -> H.
//
// Forcing trajectories are consumed from index 1. A forcing that starts at
// index 0 has H(0) ignored (a warning is emitted when it is nonzero); one that starts later than
// 1 or ends before `horizon` is an InputError.

#include "volterra/kernel.hpp"
#include "volterra/nonlinearity.hpp"
#include "volterra/trajectory.hpp"

#include <cstddef>

namespace volterra {

/// x(0..horizon) by direct recursion, O(horizon * min(horizon, M)).
Trajectory solve_linear(const Kernel& kernel, const Trajectory& forcing, double xi, std::size_t horizon);

/// Signed-log variant of solve_linear for solutions that leave the double range.
LogTrajectory solve_linear_log(const Kernel& kernel, const LogTrajectory& forcing, double xi,
                               std::size_t horizon);

/// r(0..horizon) with r(0) = 1.
Trajectory resolvent(const Kernel& kernel, std::size_t horizon);

/// x(n) = r(n) xi + sum_{j=1}^{n} r(n-j) H(j), evaluated directly in O(horizon^2).
Trajectory solve_by_representation(const Kernel& kernel, const Trajectory& forcing, double xi,
                                   std::size_t horizon);

/// H(n+1) = x(n+1) - sum_{j=0}^{n} k(n-j) x(j) for 0 <= n < len-1; result starts at index 1.
Trajectory recover_forcing(const Kernel& kernel, const Trajectory& solution);

/// Nonlinear recursion; identical to solve_linear (bitwise) for f = identity.
Trajectory solve_nonlinear(const Kernel& kernel, const Nonlinearity& f, const Trajectory& forcing, double xi,
                           std::size_t horizon);

/// Largest per-index gap |a(n) - b(n)| / max(1, |a(n)|, |b(n)|) over the common range.
double max_relative_gap(const Trajectory& a, const Trajectory& b);

} // namespace volterra
