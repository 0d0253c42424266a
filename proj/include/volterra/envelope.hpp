#pragma once

#include "volterra/tail_model.hpp"
#include "volterra/trajectory.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace volterra::stochastic {

enum class SeriesVerdict { convergent, divergent, undecided };
std::string to_string(SeriesVerdict v);

/// Log-log slope of the summands over the last decade of indices.
struct DecayFit {
    double slope = 0.0;  ///< -inf when the summands end in exact zeros
    std::size_t points = 0;
    SeriesVerdict verdict = SeriesVerdict::undecided;
};

/// summands[i] is the term at index first_index + i (nonnegative). A series
/// whose last term is exactly zero counts as convergent; otherwise slope < -1
/// means convergent and slope >= -1 divergent, with fewer than `min_points`
/// nonzero terms in the decade giving undecided.
DecayFit classify_series(std::span<const double> summands, std::size_t first_index, std::size_t min_points = 10);

struct EnvelopeRow {
    double K = 0.0;
    /// (N, S_N) at powers of ten and at the horizon.
    std::vector<std::pair<std::size_t, double>> checkpoints;
    double total = 0.0;
    DecayFit fit;
};

struct EnvelopeReport {
    std::size_t horizon = 0;
    std::vector<EnvelopeRow> rows;  ///< in ascending K
    /// Largest divergent K below the smallest convergent K, when both exist.
    bool bracketed = false;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::optional<double> crossing;  ///< bracket midpoint
};

/// Partial sums of P(|Z| > K a(n)) for n from a's start to N. a must be
/// positive and nondecreasing on that range.
EnvelopeReport envelope_sums(const TailModel& tail, const Trajectory& a, std::vector<double> K_grid, std::size_t N);

} // namespace volterra::stochastic
