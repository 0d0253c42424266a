#pragma once

#include "volterra/trajectory.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace volterra {

/// Deterministic growth sequences H1..H10 together with the ratio limit
/// lambda = lim g(n-1)/g(n) of each.
///
///   H1  prod_{i<=j} (log_i n)^beta_i          lambda = 1 (first nonzero beta > 0)
///   H2  n^theta1 H1(n)                        lambda = 1 (theta1 > 0, any beta)
///   H3  n^theta1                              lambda = 1
///   H4  exp(alpha n^theta2), theta2 in (0,1)  lambda = 1
///   H5  H4 H2                                 lambda = 1
///   H6  lambda^-n, lambda in (0,1)            lambda
///   H7  H6 H4 H2                              lambda
///   H8  exp(alpha n^theta2), theta2 > 1       lambda = 0
///   H9  n!                                    lambda = 0
///   H10 exp_j(n), j >= 2                      lambda = 0
///
/// Iterated logarithms are evaluated at max(n, ceil(exp_j(1))) so every
/// factor is >= 1; the sequence is asymptotic to the closed form.
struct CatalogueParams {
    std::vector<double> betas{1.0};
    double theta1 = 1.0;
    double alpha = 1.0;
    double theta2 = 0.5;
    double lambda = 0.5;
    int depth = 2;  ///< iterated-exponential depth for H10
};

class GrowthCatalogue {
public:
    /// id in 1..10; throws ParameterError on invalid parameters.
    GrowthCatalogue(int id, CatalogueParams params = {});

    int id() const noexcept { return id_; }
    std::string name() const { return "H" + std::to_string(id_); }
    const CatalogueParams& params() const noexcept { return params_; }

    /// Ratio limit of the family.
    double lambda() const noexcept;

    /// log H(n); positive sequences only.
    double log_value(std::size_t n) const;

    /// Indices [start, start+length) in signed-log form.
    LogTrajectory generate_log(std::size_t start, std::size_t length) const;

    /// Plain doubles; OverflowError once the values leave the double range.
    Trajectory generate(std::size_t start, std::size_t length) const;

    /// One-line description per member, for --list-catalogue.
    static std::vector<std::string> describe();

private:
    double log_h1(double n) const;
    double log_h2(double n) const;
    double log_h4(double n) const;

    int id_;
    CatalogueParams params_;
    double log_floor_ = 1.0;  // smallest argument used for the iterated-log factors
};

/// log_j(x) (j-fold natural logarithm).
double iterated_log(double x, int depth);
/// exp_j(x) (j-fold exponential); may be +inf.
double iterated_exp(double x, int depth);

} // namespace volterra
