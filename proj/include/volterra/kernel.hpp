#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace volterra {

/// Truncated summable convolution kernel k(0..M-1), zero beyond M-1.
///
/// `tail_bound` bounds sum_{l >= M} |k(l)| of the untruncated kernel the
/// coefficients were cut from: exactly 0 for finitely supported kernels,
/// an analytic bound for truncated catalogue kernels.
class Kernel {
public:
    Kernel() = default;
    explicit Kernel(std::vector<double> coefficients, double tail_bound = 0.0, std::string name = "explicit");

    static Kernel zero() { return Kernel({}, 0.0, "zero"); }
    /// k = (c).
    static Kernel single(double c);
    /// k(l) = c * ratio^l, l < length; tail bound c*ratio^length/(1-ratio).
    static Kernel geometric(double c, double ratio, std::size_t length);
    /// k(l) = c * (l+1)^(-p), l < length, p > 1; tail bound |c| length^(1-p)/(p-1).
    static Kernel power_law(double c, double p, std::size_t length);

    std::size_t size() const noexcept { return k_.size(); }
    bool empty() const noexcept { return k_.empty(); }
    /// k(l), zero for l >= size().
    double operator()(std::size_t l) const noexcept { return l < k_.size() ? k_[l] : 0.0; }
    std::span<const double> coefficients() const noexcept { return k_; }

    /// sum |k(l)| over stored entries.
    double l1_norm() const noexcept { return l1_; }
    double sum() const noexcept;
    bool nonnegative() const noexcept;
    double tail_bound() const noexcept { return tail_bound_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::vector<double> k_;
    double l1_ = 0.0;
    double tail_bound_ = 0.0;
    std::string name_ = "zero";
};

} // namespace volterra
