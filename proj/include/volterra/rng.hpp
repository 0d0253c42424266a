#pragma once

#include <cstdint>

namespace volterra::stochastic {

/// SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent 64-bit key for sub-stream `stream` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Counter-based generator: the draw at a given counter depends only on
/// (key, counter), so any index can be produced without replaying the stream.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t bits(std::uint64_t counter) const noexcept;
    /// Uniform on the open interval (0,1), 53-bit resolution.
    double uniform(std::uint64_t counter) const noexcept;
    /// Standard normal via Box-Muller on counters 2c and 2c+1.
    double normal(std::uint64_t counter) const noexcept;

private:
    std::uint64_t key_;
};

} // namespace volterra::stochastic
