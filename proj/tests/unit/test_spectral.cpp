#include "catch_amalgamated.hpp"

#include "random_systems.hpp"
#include "volterra/error.hpp"
#include "volterra/spectral.hpp"

#include <cmath>
#include <vector>

using namespace volterra;
using namespace volterra::spectral;
using Catch::Approx;

TEST_CASE("characteristic roots of single-lag kernels", "[spectral]") {
    const auto a = characteristic_roots(Kernel::single(0.5));
    REQUIRE(a.roots.size() == 1);
    CHECK(a.roots[0].real() == Approx(0.5));
    CHECK(std::abs(a.roots[0].imag()) < 1e-14);
    CHECK(a.summable);

    const auto b = characteristic_roots(Kernel::single(2.0));
    REQUIRE(b.roots.size() == 1);
    CHECK(b.roots[0].real() == Approx(2.0));
    CHECK_FALSE(b.summable);
    CHECK(b.verdict == Verdict::not_summable);

    const auto z = characteristic_roots(Kernel::zero());
    CHECK(z.roots.empty());
    CHECK(z.summable);
}

TEST_CASE("geometric kernel is summable and roots are accurate", "[spectral]") {
    const auto rep = characteristic_roots(Kernel::geometric(0.3, 0.5, 20));
    CHECK(rep.roots.size() == 20);
    CHECK(rep.summable);
    CHECK(rep.max_backward_error < 1e-12);
    CHECK(rep.tail_mass > 0.0);
}

TEST_CASE("roots on the unit circle are marginal", "[spectral]") {
    const auto rep = characteristic_roots(Kernel::single(1.0));
    CHECK(rep.verdict == Verdict::marginal);
    CHECK_FALSE(rep.summable);
    CHECK(to_string(Verdict::not_summable) == "not-summable");
}

TEST_CASE("multiplier worked examples", "[spectral]") {
    CHECK(multiplier_L(Kernel({0.4, -0.3, 0.2}), 0.0).value == 1.0);
    CHECK(multiplier_L(Kernel::geometric(0.3, 0.5, 40), 0.5).value == Approx(1.25).epsilon(1e-14));
    CHECK(multiplier_L(Kernel::single(0.5), 1.0).value == 2.0);
    CHECK_THROWS_AS(multiplier_L(Kernel::single(1.0), 1.0), SingularMultiplierError);
    CHECK_THROWS_AS(multiplier_L(Kernel::single(0.5), 1.5), InputError);
    const auto flagged = multiplier_L(Kernel::single(2.0), 0.25);
    CHECK_FALSE(flagged.applicable);
    CHECK(flagged.value == 2.0);
}

TEST_CASE("rho partial sums converge to the multiplier", "[spectral]") {
    const auto a = rho_of_lambda(Kernel::single(0.5), 1.0, 200);
    CHECK(a.limit == 2.0);
    CHECK(a.within_tolerance);
    const auto z = rho_of_lambda(Kernel::zero(), 0.7, 20);
    CHECK(z.limit == 1.0);
    for (double v : z.partial_sums.values()) CHECK(v == 1.0);
    const auto g = rho_of_lambda(Kernel::geometric(0.3, 0.5, 40), 0.5, 200);
    CHECK(g.final_gap < 1e-10);
}

TEST_CASE("spectral report carries a lambda grid", "[spectral]") {
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto rep = spectral_report(Kernel::single(0.5), grid, 300);
    REQUIRE(rep.lambda_points.size() == 3);
    for (const auto& p : rep.lambda_points) CHECK(p.rho_star == Approx(p.L).epsilon(1e-12));
    CHECK(rep.lambda_points[2].L == 2.0);
    const auto bad = spectral_report(Kernel::single(2.0), grid, 50);
    CHECK(std::isnan(bad.lambda_points[1].rho_star));
}

TEST_CASE("property: rho identity on random summable kernels", "[spectral][property]") {
    testing::Gen gen(4242);
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = gen.kernel(gen.uniform(0.0, 0.95), 20);
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto rho = rho_of_lambda(k, lambda, 2000);
            CHECK(rho.final_gap < 1e-8);
        }
    }
}

TEST_CASE("property: nonnegative kernels are summable iff their sum is below one", "[spectral][property]") {
    testing::Gen gen(17);
    for (int trial = 0; trial < 100; ++trial) {
        const double s = gen.uniform(0.0, 1.0) < 0.5 ? gen.uniform(0.05, 0.95) : gen.uniform(1.05, 2.0);
        const auto k = gen.kernel(s, 15, true);
        CHECK(characteristic_roots(k).summable == (k.sum() < 1.0));
    }
}

TEST_CASE("property: absolute norm below one implies summable", "[spectral][property]") {
    testing::Gen gen(18);
    for (int trial = 0; trial < 100; ++trial) CHECK(characteristic_roots(gen.kernel(gen.uniform(0.0, 0.999), 25)).summable);
}

TEST_CASE("property: multiplier effect for nonnegative kernels", "[spectral][property]") {
    testing::Gen gen(19);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = gen.kernel(gen.uniform(0.01, 0.95), 12, true);
        CHECK(multiplier_L(k, gen.uniform(0.01, 1.0)).value > 1.0);
        CHECK(multiplier_L(k, 0.0).value == 1.0);
    }
}
