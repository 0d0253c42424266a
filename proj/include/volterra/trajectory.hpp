#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace volterra {

/// A finite real sequence value(n), n0 <= n < n0 + size(), with contiguous
/// indexing. Non-finite values are rejected on construction and on set().
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::size_t start, std::vector<double> values);

    /// n0 = 0, value(n) = fn(n) for n < length.
    template <typename Fn>
    static Trajectory from_function(std::size_t start, std::size_t length, Fn&& fn) {
        std::vector<double> v(length);
        for (std::size_t i = 0; i < length; ++i) v[i] = static_cast<double>(fn(start + i));
        return Trajectory(start, std::move(v));
    }

    std::size_t start() const noexcept { return start_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    /// One past the last defined index.
    std::size_t end_index() const noexcept { return start_ + values_.size(); }
    bool defined_at(std::size_t n) const noexcept { return n >= start_ && n < end_index(); }

    /// Throws InputError when n is outside the stored range.
    double value(std::size_t n) const;
    double operator[](std::size_t n) const { return values_[n - start_]; }

    void set(std::size_t n, double v);

    std::span<const double> values() const noexcept { return values_; }

    /// Copy restricted to [from, to).
    Trajectory slice(std::size_t from, std::size_t to) const;

private:
    std::size_t start_ = 0;
    std::vector<double> values_;
};

/// Sign and natural-log magnitude of a real; zero has sign 0 and log -inf.
struct LogValue {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static LogValue from_double(double v) noexcept {
        if (v == 0.0) return {};
        return {v > 0 ? 1 : -1, std::log(std::abs(v))};
    }
    static LogValue from_log(double log_abs, int sign = 1) noexcept { return {sign, log_abs}; }

    bool is_zero() const noexcept { return sign == 0; }
    /// May overflow to +-inf; callers check.
    double to_double() const noexcept { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

LogValue operator*(LogValue a, LogValue b) noexcept;

/// Signed-log counterpart of Trajectory, used when magnitudes leave the double range.
class LogTrajectory {
public:
    LogTrajectory() = default;
    LogTrajectory(std::size_t start, std::vector<LogValue> values);

    static LogTrajectory from_trajectory(const Trajectory& t);

    std::size_t start() const noexcept { return start_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t end_index() const noexcept { return start_ + values_.size(); }
    bool defined_at(std::size_t n) const noexcept { return n >= start_ && n < end_index(); }

    LogValue value(std::size_t n) const;
    const LogValue& operator[](std::size_t n) const { return values_[n - start_]; }
    std::span<const LogValue> values() const noexcept { return values_; }

    /// Converts to plain doubles; OverflowError at the first index that does not fit.
    Trajectory to_trajectory() const;

    /// value(n) / scale(n) as a plain trajectory over the common range. Both
    /// operands may be huge; the ratio has to fit a double.
    Trajectory divided_by(const LogTrajectory& scale) const;

private:
    std::size_t start_ = 0;
    std::vector<LogValue> values_;
};

/// Accumulates a signed sum of terms given in log form without overflow.
class LogSum {
public:
    void add(LogValue term) noexcept;
    LogValue result() const noexcept;

private:
    // Running sum is scaled_ * exp(shift_).
    double shift_ = -std::numeric_limits<double>::infinity();
    double scaled_ = 0.0;
};

} // namespace volterra
