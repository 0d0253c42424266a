#include "volterra/nonlinearity.hpp"

#include "volterra/error.hpp"

#include <cmath>

namespace volterra {

namespace {
double signed_sqrt(double x) noexcept { return std::copysign(std::sqrt(std::abs(x)), x); }
} // namespace

Nonlinearity Nonlinearity::solow(double delta, double s) {
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("solow: depreciation delta must lie in (0,1)");
    if (!(s > 0.0 && s < 1.0)) throw ParameterError("solow: savings rate s must lie in (0,1)");
    Nonlinearity f(Kind::solow);
    f.delta_ = delta;
    f.s_ = s;
    return f;
}

Nonlinearity Nonlinearity::from_name(std::string_view name, double delta, double s) {
    if (name == "identity") return identity();
    if (name == "rational") return rational();
    if (name == "sqrt") return square_root();
    if (name == "solow") return solow(delta, s);
    throw ParameterError("unknown nonlinearity '" + std::string(name) + "'");
}

double Nonlinearity::operator()(double x) const noexcept {
    switch (kind_) {
    case Kind::identity: return x;
    case Kind::rational: return x + x / (1.0 + std::abs(x));
    case Kind::sqrt: return x + signed_sqrt(x);
    case Kind::solow: return (1.0 - delta_) * x + s_ * signed_sqrt(x);
    }
    return x;
}

double Nonlinearity::asymptotic_slope() const noexcept {
    return kind_ == Kind::solow ? 1.0 - delta_ : 1.0;
}

std::string Nonlinearity::name() const {
    switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::rational: return "rational";
    case Kind::sqrt: return "sqrt";
    case Kind::solow: return "solow";
    }
    return "identity";
}

} // namespace volterra
