#include "volterra/kernel.hpp"

#include "volterra/error.hpp"

#include <algorithm>
#include <cmath>

namespace volterra {

Kernel::Kernel(std::vector<double> coefficients, double tail_bound, std::string name)
    : k_(std::move(coefficients)), tail_bound_(tail_bound), name_(std::move(name)) {
    for (std::size_t l = 0; l < k_.size(); ++l) {
        if (!std::isfinite(k_[l])) throw InputError("kernel entry k(" + std::to_string(l) + ") is not finite");
        l1_ += std::abs(k_[l]);
    }
    if (!(tail_bound_ >= 0.0) || !std::isfinite(tail_bound_))
        throw InputError("kernel tail bound must be finite and nonnegative");
}

Kernel Kernel::single(double c) { return Kernel({c}, 0.0, "single"); }

Kernel Kernel::geometric(double c, double ratio, std::size_t length) {
    if (!(std::abs(ratio) < 1.0)) throw ParameterError("geometric kernel needs |ratio| < 1");
    std::vector<double> k(length);
    double term = c;
    for (auto& v : k) {
        v = term;
        term *= ratio;
    }
    const double tail = std::abs(c) * std::pow(std::abs(ratio), static_cast<double>(length)) / (1.0 - std::abs(ratio));
    return Kernel(std::move(k), tail, "geometric");
}

Kernel Kernel::power_law(double c, double p, std::size_t length) {
    if (!(p > 1.0)) throw ParameterError("power-law kernel needs exponent p > 1");
    if (length == 0) throw ParameterError("power-law kernel needs length >= 1");
    std::vector<double> k(length);
    for (std::size_t l = 0; l < length; ++l) k[l] = c * std::pow(static_cast<double>(l + 1), -p);
    const double tail = std::abs(c) * std::pow(static_cast<double>(length), 1.0 - p) / (p - 1.0);
    return Kernel(std::move(k), tail, "power-law");
}

double Kernel::sum() const noexcept {
    double s = 0.0;
    for (double v : k_) s += v;
    return s;
}

bool Kernel::nonnegative() const noexcept {
    return std::all_of(k_.begin(), k_.end(), [](double v) { return v >= 0.0; });
}

} // namespace volterra
