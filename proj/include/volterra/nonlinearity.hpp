#pragma once

#include <string>
#include <string_view>

namespace volterra {

/// Built-in nonlinearities f for x(n+1) = H(n+1) + sum k(n-j) f(x(j)).
class Nonlinearity {
public:
    enum class Kind {
        identity,  ///< f(x) = x
        rational,  ///< f(x) = x + x/(1+|x|)
        sqrt,      ///< f(x) = x + sign(x) sqrt|x|
        solow,     ///< f(x) = (1-delta) x + s sign(x) sqrt|x|; f(x)/x -> 1-delta
    };

    Nonlinearity() = default;
    static Nonlinearity identity() { return Nonlinearity(Kind::identity); }
    static Nonlinearity rational() { return Nonlinearity(Kind::rational); }
    static Nonlinearity square_root() { return Nonlinearity(Kind::sqrt); }
    /// Requires delta, s in (0,1).
    static Nonlinearity solow(double delta, double s);
    /// Parses "identity" | "rational" | "sqrt" | "solow".
    static Nonlinearity from_name(std::string_view name, double delta = 0.1, double s = 0.2);

    double operator()(double x) const noexcept;
    /// phi(x) = f(x) - x.
    double deviation(double x) const noexcept { return (*this)(x) - x; }

    /// lim f(x)/x as |x| -> infinity.
    double asymptotic_slope() const noexcept;
    /// True when f(x)/x -> 1, i.e. linearisation at infinity applies.
    bool linear_at_infinity() const noexcept { return asymptotic_slope() == 1.0; }

    Kind kind() const noexcept { return kind_; }
    std::string name() const;
    double delta() const noexcept { return delta_; }
    double savings() const noexcept { return s_; }

private:
    explicit Nonlinearity(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::identity;
    double delta_ = 0.0;
    double s_ = 0.0;
};

} // namespace volterra
