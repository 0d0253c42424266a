#include "volterra/catalogue.hpp"

#include "volterra/error.hpp"

#include <algorithm>
#include <cmath>

namespace volterra {

double iterated_log(double x, int depth) {
    for (int i = 0; i < depth; ++i) x = std::log(x);
    return x;
}

double iterated_exp(double x, int depth) {
    for (int i = 0; i < depth; ++i) x = std::exp(x);
    return x;
}

GrowthCatalogue::GrowthCatalogue(int id, CatalogueParams params) : id_(id), params_(std::move(params)) {
    if (id_ < 1 || id_ > 10) throw ParameterError("catalogue id must be in 1..10 (got " + std::to_string(id_) + ")");
    const auto& p = params_;
    const bool uses_h1 = id_ == 1 || id_ == 2 || id_ == 5 || id_ == 7;
    if (uses_h1) {
        if (p.betas.empty() || p.betas.size() > 3)
            throw ParameterError(name() + ": betas must hold 1 to 3 exponents");
        log_floor_ = std::ceil(iterated_exp(1.0, static_cast<int>(p.betas.size())));
    }
    if (id_ == 1) {
        const auto first = std::find_if(p.betas.begin(), p.betas.end(), [](double b) { return b != 0.0; });
        if (first == p.betas.end() || *first <= 0.0)
            throw ParameterError("H1: the first nonzero beta must be positive");
    }
    if ((id_ == 2 || id_ == 3) && !(p.theta1 > 0.0)) throw ParameterError(name() + ": theta1 must be > 0");
    if ((id_ == 4 || id_ == 5 || id_ == 7) && !(p.alpha > 0.0 && p.theta2 > 0.0 && p.theta2 < 1.0))
        throw ParameterError(name() + ": needs alpha > 0 and theta2 in (0,1)");
    if (id_ == 8 && !(p.alpha > 0.0 && p.theta2 > 1.0))
        throw ParameterError("H8: needs alpha > 0 and theta2 > 1");
    if ((id_ == 6 || id_ == 7) && !(p.lambda > 0.0 && p.lambda < 1.0))
        throw ParameterError(name() + ": lambda must lie in (0,1)");
    if (id_ == 10 && p.depth < 2) throw ParameterError("H10: iterated-exponential depth must be >= 2");
}

double GrowthCatalogue::lambda() const noexcept {
    if (id_ <= 5) return 1.0;
    if (id_ <= 7) return params_.lambda;
    return 0.0;
}

double GrowthCatalogue::log_h1(double n) const {
    const double arg = std::max(n, log_floor_);
    double acc = 0.0;
    for (std::size_t i = 0; i < params_.betas.size(); ++i) {
        if (params_.betas[i] != 0.0) acc += params_.betas[i] * std::log(iterated_log(arg, static_cast<int>(i + 1)));
    }
    return acc;
}

double GrowthCatalogue::log_h2(double n) const {
    return params_.theta1 * std::log(std::max(n, 1.0)) + log_h1(n);
}

double GrowthCatalogue::log_h4(double n) const { return params_.alpha * std::pow(n, params_.theta2); }

double GrowthCatalogue::log_value(std::size_t idx) const {
    const double n = static_cast<double>(idx);
    switch (id_) {
    case 1: return log_h1(n);
    case 2: return log_h2(n);
    case 3: return params_.theta1 * std::log(std::max(n, 1.0));
    case 4: return log_h4(n);
    case 5: return log_h4(n) + log_h2(n);
    case 6: return -n * std::log(params_.lambda);
    case 7: return -n * std::log(params_.lambda) + log_h4(n) + log_h2(n);
    case 8: return log_h4(n);
    case 9: return std::lgamma(n + 1.0);
    case 10: return iterated_exp(n, params_.depth - 1);
    default: return 0.0;
    }
}

LogTrajectory GrowthCatalogue::generate_log(std::size_t start, std::size_t length) const {
    std::vector<LogValue> v(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double lv = log_value(start + i);
        if (!std::isfinite(lv))
            throw OverflowError(name() + " leaves the log-domain range", static_cast<std::ptrdiff_t>(start + i));
        v[i] = LogValue::from_log(lv);
    }
    return LogTrajectory(start, std::move(v));
}

Trajectory GrowthCatalogue::generate(std::size_t start, std::size_t length) const {
    return generate_log(start, length).to_trajectory();
}

std::vector<std::string> GrowthCatalogue::describe() {
    return {
        "H1  prod_{i<=j} (log_i n)^beta_i       lambda=1   params: betas (first nonzero > 0)",
        "H2  n^theta1 * H1(n)                   lambda=1   params: theta1 > 0, betas",
        "H3  n^theta1                           lambda=1   params: theta1 > 0",
        "H4  exp(alpha n^theta2)                lambda=1   params: alpha > 0, theta2 in (0,1)",
        "H5  H4(n) * H2(n)                      lambda=1   params: alpha, theta2, theta1, betas",
        "H6  lambda^-n                          lambda     params: lambda in (0,1)",
        "H7  H6(n) * H4(n) * H2(n)              lambda     params: lambda, alpha, theta2, theta1, betas",
        "H8  exp(alpha n^theta2)                lambda=0   params: alpha > 0, theta2 > 1",
        "H9  n!                                 lambda=0",
        "H10 exp_j(n)                           lambda=0   params: depth j >= 2",
    };
}

} // namespace volterra
