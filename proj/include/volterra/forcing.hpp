#pragma once

#include "volterra/catalogue.hpp"
#include "volterra/tail_model.hpp"
#include "volterra/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace volterra::stochastic {

/// Seeded forcing sequences H(1..N); H(0) is set to 0.
///
///   iid            H(n) = Y(n)
///   random-walk    H(n) = drift n + sum_{j<=n} Y(j)
///   geometric      log H(n) = drift n + sum_{j<=n} Y(j)
///   catalogue      H(n) = member(n)
///   modulated      H(n) = member(n) * factor(n), factor periodic or offset + scale Y(n)
///
/// A missing noise model means Y = 0. Draw n of every stream depends only on
/// (seed, n).
class ForcingGenerator {
public:
    enum class Kind { iid, random_walk, geometric_random_walk, catalogue, modulated };

    static ForcingGenerator iid(TailModel noise, std::uint64_t seed);
    static ForcingGenerator random_walk(double drift, std::optional<TailModel> noise, std::uint64_t seed);
    static ForcingGenerator geometric_random_walk(double drift, std::optional<TailModel> noise, std::uint64_t seed);
    static ForcingGenerator catalogue(GrowthCatalogue member);
    static ForcingGenerator modulated_periodic(GrowthCatalogue base, std::vector<double> pattern);
    static ForcingGenerator modulated_iid(GrowthCatalogue base, TailModel factor, double offset, double scale,
                                          std::uint64_t seed);

    Kind kind() const noexcept { return kind_; }
    std::string kind_name() const;
    std::uint64_t seed() const noexcept { return seed_; }
    ForcingGenerator with_seed(std::uint64_t seed) const;
    bool random() const noexcept;

    double drift() const noexcept { return drift_; }
    const std::optional<TailModel>& noise() const noexcept { return noise_; }
    const std::optional<GrowthCatalogue>& base() const noexcept { return base_; }
    const std::vector<double>& pattern() const noexcept { return pattern_; }
    double factor_offset() const noexcept { return offset_; }
    double factor_scale() const noexcept { return scale_; }

    /// Indices 0..horizon; OverflowError when a value leaves the double range.
    Trajectory generate(std::size_t horizon) const;
    /// Indices 0..horizon in signed-log form.
    LogTrajectory generate_log(std::size_t horizon) const;

private:
    ForcingGenerator() = default;
    double draw(std::size_t n) const;

    Kind kind_ = Kind::iid;
    std::uint64_t seed_ = 0;
    double drift_ = 0.0;
    std::optional<TailModel> noise_;
    std::optional<GrowthCatalogue> base_;
    std::vector<double> pattern_;
    double offset_ = 0.0;
    double scale_ = 1.0;
};

} // namespace volterra::stochastic
