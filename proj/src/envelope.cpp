#include "volterra/envelope.hpp"

#include "volterra/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace volterra::stochastic {

std::string to_string(SeriesVerdict v) {
    switch (v) {
    case SeriesVerdict::convergent: return "convergent";
    case SeriesVerdict::divergent: return "divergent";
    case SeriesVerdict::undecided: return "undecided";
    }
    return "undecided";
}

DecayFit classify_series(std::span<const double> summands, std::size_t first_index, std::size_t min_points) {
    DecayFit fit;
    if (summands.empty()) return fit;
    for (double s : summands)
        if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("classify_series: summands must be finite and nonnegative");
    if (summands.back() == 0.0) {
        fit.slope = -std::numeric_limits<double>::infinity();
        fit.verdict = SeriesVerdict::convergent;
        return fit;
    }
    const std::size_t last = first_index + summands.size() - 1;
    const std::size_t from = std::max(first_index, std::max<std::size_t>(1, (last + 9) / 10));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t n = from; n <= last; ++n) {
        const double s = summands[n - first_index];
        if (s == 0.0) continue;
        const double lx = std::log(static_cast<double>(n)), ly = std::log(s);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    fit.points = m;
    if (m < std::max<std::size_t>(min_points, 2)) return fit;
    const double dm = static_cast<double>(m);
    const double denom = sxx - sx * sx / dm;
    if (denom <= 0.0) return fit;
    fit.slope = (sxy - sx * sy / dm) / denom;
    fit.verdict = fit.slope < -1.0 ? SeriesVerdict::convergent : SeriesVerdict::divergent;
    return fit;
}

EnvelopeReport envelope_sums(const TailModel& tail, const Trajectory& a, std::vector<double> K_grid, std::size_t N) {
    if (K_grid.empty()) throw InputError("envelope_sums: empty K grid");
    for (double K : K_grid)
        if (!(K > 0.0) || !std::isfinite(K)) throw InputError("envelope_sums: K values must be positive");
    if (N < a.start() || !a.defined_at(N))
        throw InputError("envelope_sums: scale sequence must be defined up to N = " + std::to_string(N));
    for (std::size_t n = a.start(); n <= N; ++n) {
        if (!(a[n] > 0.0)) throw InputError("envelope_sums: scale sequence must be positive (index " + std::to_string(n) + ")");
        if (n > a.start() && a[n] < a[n - 1])
            throw InputError("envelope_sums: scale sequence must be nondecreasing (index " + std::to_string(n) + ")");
    }
    std::sort(K_grid.begin(), K_grid.end());
    K_grid.erase(std::unique(K_grid.begin(), K_grid.end()), K_grid.end());

    EnvelopeReport rep;
    rep.horizon = N;
    std::vector<double> summands(N - a.start() + 1);
    for (double K : K_grid) {
        EnvelopeRow row;
        row.K = K;
        double acc = 0.0;
        std::size_t next_checkpoint = 10;
        for (std::size_t n = a.start(); n <= N; ++n) {
            const double s = tail.two_sided_tail(K * a[n]);
            summands[n - a.start()] = s;
            acc += s;
            if (n == next_checkpoint) {
                row.checkpoints.emplace_back(n, acc);
                next_checkpoint *= 10;
            }
        }
        if (row.checkpoints.empty() || row.checkpoints.back().first != N) row.checkpoints.emplace_back(N, acc);
        row.total = acc;
        row.fit = classify_series(summands, a.start());
        rep.rows.push_back(std::move(row));
    }

    std::optional<double> lo, hi;
    for (const auto& row : rep.rows) {
        if (row.fit.verdict == SeriesVerdict::convergent && !hi) hi = row.K;
    }
    for (const auto& row : rep.rows) {
        if (row.fit.verdict == SeriesVerdict::divergent && (!hi || row.K < *hi)) lo = row.K;
    }
    if (lo && hi) {
        rep.bracketed = true;
        rep.bracket_lo = *lo;
        rep.bracket_hi = *hi;
        rep.crossing = 0.5 * (*lo + *hi);
    }
    return rep;
}

} // namespace volterra::stochastic
