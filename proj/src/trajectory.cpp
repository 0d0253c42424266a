#include "volterra/trajectory.hpp"

#include "volterra/error.hpp"

#include <algorithm>

namespace volterra {

Trajectory::Trajectory(std::size_t start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw OverflowError("trajectory value is not finite", static_cast<std::ptrdiff_t>(start_ + i));
    }
}

double Trajectory::value(std::size_t n) const {
    if (!defined_at(n))
        throw InputError("trajectory index " + std::to_string(n) + " outside [" + std::to_string(start_) +
                         ", " + std::to_string(end_index()) + ")");
    return values_[n - start_];
}

void Trajectory::set(std::size_t n, double v) {
    if (!defined_at(n)) throw InputError("trajectory index " + std::to_string(n) + " out of range");
    if (!std::isfinite(v)) throw OverflowError("trajectory value is not finite", static_cast<std::ptrdiff_t>(n));
    values_[n - start_] = v;
}

Trajectory Trajectory::slice(std::size_t from, std::size_t to) const {
    from = std::max(from, start_);
    to = std::min(to, end_index());
    if (from >= to) return Trajectory(from, {});
    return Trajectory(from, std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(from - start_),
                                                values_.begin() + static_cast<std::ptrdiff_t>(to - start_)));
}

LogValue operator*(LogValue a, LogValue b) noexcept {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.sign * b.sign, a.log_abs + b.log_abs};
}

LogTrajectory::LogTrajectory(std::size_t start, std::vector<LogValue> values)
    : start_(start), values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto& v = values_[i];
        const bool ok = v.sign == 0 || (std::isfinite(v.log_abs) && (v.sign == 1 || v.sign == -1));
        if (!ok) throw OverflowError("log-trajectory value is not finite", static_cast<std::ptrdiff_t>(start_ + i));
    }
}

LogTrajectory LogTrajectory::from_trajectory(const Trajectory& t) {
    std::vector<LogValue> v;
    v.reserve(t.size());
    for (double x : t.values()) v.push_back(LogValue::from_double(x));
    return LogTrajectory(t.start(), std::move(v));
}

LogValue LogTrajectory::value(std::size_t n) const {
    if (!defined_at(n)) throw InputError("log-trajectory index " + std::to_string(n) + " out of range");
    return values_[n - start_];
}

Trajectory LogTrajectory::to_trajectory() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out[i] = values_[i].to_double();
        if (!std::isfinite(out[i]))
            throw OverflowError("value does not fit a double", static_cast<std::ptrdiff_t>(start_ + i));
    }
    return Trajectory(start_, std::move(out));
}

Trajectory LogTrajectory::divided_by(const LogTrajectory& scale) const {
    const std::size_t from = std::max(start_, scale.start_);
    const std::size_t to = std::min(end_index(), scale.end_index());
    std::vector<double> out;
    out.reserve(to > from ? to - from : 0);
    for (std::size_t n = from; n < to; ++n) {
        const LogValue num = (*this)[n];
        const LogValue den = scale[n];
        if (den.is_zero()) throw InputError("division by a zero scale at index " + std::to_string(n));
        const double r = num.is_zero() ? 0.0 : num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
        if (!std::isfinite(r)) throw OverflowError("ratio does not fit a double", static_cast<std::ptrdiff_t>(n));
        out.push_back(r);
    }
    return Trajectory(from, std::move(out));
}

void LogSum::add(LogValue term) noexcept {
    if (term.is_zero()) return;
    if (term.log_abs > shift_) {
        scaled_ = scaled_ * std::exp(shift_ - term.log_abs) + term.sign;
        shift_ = term.log_abs;
    } else {
        scaled_ += term.sign * std::exp(term.log_abs - shift_);
    }
}

LogValue LogSum::result() const noexcept {
    if (scaled_ == 0.0) return {};
    return {scaled_ > 0 ? 1 : -1, shift_ + std::log(std::abs(scaled_))};
}

} // namespace volterra
