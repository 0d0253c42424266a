#pragma once

// Seeded generators for property tests.

#include "volterra/kernel.hpp"
#include "volterra/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

    /// Kernel of length 1..max_len with |k|_1 = l1 exactly (up to rounding) and random signs.
    volterra::Kernel kernel(double l1, std::size_t max_len = 12, bool nonnegative = false) {
        const std::size_t m = index(1, max_len);
        std::vector<double> k(m);
        double s = 0.0;
        for (auto& v : k) {
            v = uniform(0.0, 1.0);
            s += v;
        }
        for (auto& v : k) {
            v *= l1 / s;
            if (!nonnegative && uniform(0.0, 1.0) < 0.5) v = -v;
        }
        return volterra::Kernel(std::move(k));
    }

    /// H(1..n) bounded by `bound`.
    volterra::Trajectory forcing(std::size_t n, double bound) {
        std::vector<double> h(n);
        for (auto& v : h) v = uniform(-bound, bound);
        return volterra::Trajectory(1, std::move(h));
    }

private:
    std::mt19937_64 rng_;
};

} // namespace testing
