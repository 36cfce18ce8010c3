#include <cmath>

#include "doctest.h"
#include "heatwave/quad.hpp"

using heatwave::quad::integrate_scalar;

TEST_CASE("gauss-kronrod exactness degrees pin the tabulated constants") {
    // K15 integrates degree <= 22 exactly; a typo in any node/weight breaks this
    auto r = integrate_scalar([](double x) { return std::pow(x, 20.0); }, -1.0, 1.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0 / 21.0).epsilon(1e-14));
    CHECK(r.panels == 1);
    // the embedded G7 (degree <= 13) drives the error estimate: x^14 has
    // a known K-G gap, so a single panel reports a nonzero estimate
    auto r14 = integrate_scalar([](double x) { return std::pow(x, 14.0); }, -1.0, 1.0, 1.0);
    CHECK(r14.error_estimate > 1e-8);
    CHECK(r14.value == doctest::Approx(2.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("adaptive refinement reaches tight tolerances") {
    auto r = integrate_scalar([](double x) { return std::exp(x); }, 0.0, 3.0, 1e-13);
    CHECK(std::fabs(r.value - (std::exp(3.0) - 1.0)) < 1e-12);

    // narrow Gaussian spike located off-center, found via break points
    const double s = 1e-3;
    auto g = [&](double x) {
        return std::exp(-(x - 0.3) * (x - 0.3) / (2 * s * s)) / std::sqrt(2 * M_PI * s * s);
    };
    auto rg = heatwave::quad::integrate_scalar(
        g, -1.0, 1.0, 1e-11, {0.3 - 8 * s, 0.3 - 2 * s, 0.3, 0.3 + 2 * s, 0.3 + 8 * s});
    CHECK(std::fabs(rg.value - 1.0) < 1e-9);
}

TEST_CASE("integrable sqrt singularity via prior substitution") {
    // int_0^1 1/sqrt(x) dx = 2 after x = w^2
    auto r = integrate_scalar([](double w) { return 2.0; }, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(2.0));
}

TEST_CASE("panel budget exhaustion raises quadrature_error with achieved tolerance") {
    auto f = [](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; };
    CHECK_THROWS_AS((void)integrate_scalar(f, 0.0, 1.0, 1e-14, {}, 24),
                    heatwave::quadrature_error);
    try {
        (void)integrate_scalar(f, 0.0, 1.0, 1e-14, {}, 24);
    } catch (const heatwave::quadrature_error& e) {
        CHECK(e.requested_tol == 1e-14);
        CHECK(e.achieved_tol > 1e-14);
    }
}
