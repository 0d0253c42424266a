#include "volterra/forcing.hpp"

#include "volterra/error.hpp"

#include <cmath>

namespace volterra::stochastic {

ForcingGenerator ForcingGenerator::iid(TailModel noise, std::uint64_t seed) {
    ForcingGenerator g;
    g.kind_ = Kind::iid;
    g.noise_ = std::move(noise);
    g.seed_ = seed;
    return g;
}

ForcingGenerator ForcingGenerator::random_walk(double drift, std::optional<TailModel> noise, std::uint64_t seed) {
    if (!std::isfinite(drift)) throw ParameterError("random walk drift must be finite");
    ForcingGenerator g;
    g.kind_ = Kind::random_walk;
    g.drift_ = drift;
    g.noise_ = std::move(noise);
    g.seed_ = seed;
    return g;
}

ForcingGenerator ForcingGenerator::geometric_random_walk(double drift, std::optional<TailModel> noise,
                                                         std::uint64_t seed) {
    ForcingGenerator g = random_walk(drift, std::move(noise), seed);
    g.kind_ = Kind::geometric_random_walk;
    return g;
}

ForcingGenerator ForcingGenerator::catalogue(GrowthCatalogue member) {
    ForcingGenerator g;
    g.kind_ = Kind::catalogue;
    g.base_ = std::move(member);
    return g;
}

ForcingGenerator ForcingGenerator::modulated_periodic(GrowthCatalogue base, std::vector<double> pattern) {
    if (pattern.empty()) throw ParameterError("modulation pattern must not be empty");
    for (double v : pattern)
        if (!std::isfinite(v)) throw ParameterError("modulation pattern values must be finite");
    ForcingGenerator g;
    g.kind_ = Kind::modulated;
    g.base_ = std::move(base);
    g.pattern_ = std::move(pattern);
    return g;
}

ForcingGenerator ForcingGenerator::modulated_iid(GrowthCatalogue base, TailModel factor, double offset, double scale,
                                                 std::uint64_t seed) {
    if (!std::isfinite(offset) || !std::isfinite(scale)) throw ParameterError("modulation offset and scale must be finite");
    ForcingGenerator g;
    g.kind_ = Kind::modulated;
    g.base_ = std::move(base);
    g.noise_ = std::move(factor);
    g.offset_ = offset;
    g.scale_ = scale;
    g.seed_ = seed;
    return g;
}

std::string ForcingGenerator::kind_name() const {
    switch (kind_) {
    case Kind::iid: return "iid";
    case Kind::random_walk: return "random-walk";
    case Kind::geometric_random_walk: return "geometric-random-walk";
    case Kind::catalogue: return "catalogue";
    case Kind::modulated: return "modulated";
    }
    return "iid";
}

ForcingGenerator ForcingGenerator::with_seed(std::uint64_t seed) const {
    ForcingGenerator g = *this;
    g.seed_ = seed;
    return g;
}

bool ForcingGenerator::random() const noexcept { return noise_.has_value(); }

double ForcingGenerator::draw(std::size_t n) const {
    if (!noise_) return 0.0;
    const CounterStream stream(derive_seed(seed_, 0));
    return noise_->sample(stream, n);
}

LogTrajectory ForcingGenerator::generate_log(std::size_t horizon) const {
    if (horizon < 1) throw InputError("generate: horizon must be >= 1");
    std::vector<LogValue> out(horizon + 1);
    switch (kind_) {
    case Kind::iid:
        for (std::size_t n = 1; n <= horizon; ++n) out[n] = LogValue::from_double(draw(n));
        break;
    case Kind::random_walk: {
        double walk = 0.0;
        for (std::size_t n = 1; n <= horizon; ++n) {
            walk += draw(n);
            out[n] = LogValue::from_double(drift_ * static_cast<double>(n) + walk);
        }
        break;
    }
    case Kind::geometric_random_walk: {
        double walk = 0.0;
        for (std::size_t n = 1; n <= horizon; ++n) {
            walk += draw(n);
            out[n] = LogValue::from_log(drift_ * static_cast<double>(n) + walk);
        }
        break;
    }
    case Kind::catalogue:
        for (std::size_t n = 1; n <= horizon; ++n) out[n] = LogValue::from_log(base_->log_value(n));
        break;
    case Kind::modulated:
        for (std::size_t n = 1; n <= horizon; ++n) {
            const double factor = pattern_.empty() ? offset_ + scale_ * draw(n) : pattern_[n % pattern_.size()];
            out[n] = LogValue::from_log(base_->log_value(n)) * LogValue::from_double(factor);
        }
        break;
    }
    return LogTrajectory(0, std::move(out));
}

Trajectory ForcingGenerator::generate(std::size_t horizon) const {
    if (kind_ == Kind::iid || kind_ == Kind::random_walk) {
        if (horizon < 1) throw InputError("generate: horizon must be >= 1");
        std::vector<double> out(horizon + 1, 0.0);
        double walk = 0.0;
        for (std::size_t n = 1; n <= horizon; ++n) {
            if (kind_ == Kind::iid) {
                out[n] = draw(n);
            } else {
                walk += draw(n);
                out[n] = drift_ * static_cast<double>(n) + walk;
            }
        }
        return Trajectory(0, std::move(out));
    }
    return generate_log(horizon).to_trajectory();
}

} // namespace volterra::stochastic
