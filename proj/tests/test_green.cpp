#include <cmath>
#include <random>

#include "doctest.h"
#include "heatwave/errors.hpp"
#include "heatwave/kernels/green.hpp"
#include "heatwave/quad.hpp"

using namespace heatwave::kernels;

namespace {

// brute-force reference: fixed large symmetric image sum, no certificates
double green_bruteforce(BoundaryCondition bc, double L, double t, double x, double y,
                        int M = 300) {
    double s = 0.0;
    for (int m = -M; m <= M; ++m) {
        const double t1 = heat_kernel(t, x - y + 4.0 * m * L);
        const double t2 = heat_kernel(t, x + y + (4.0 * m + 2.0) * L);
        switch (bc) {
        case BoundaryCondition::Dirichlet: s += t1 - t2; break;
        case BoundaryCondition::Neumann: s += t1 + t2; break;
        case BoundaryCondition::Mixed: s += ((m % 2 == 0) ? 1.0 : -1.0) * (t1 - t2); break;
        }
    }
    return s;
}

GreenEvaluator make(BoundaryCondition bc, double L) { return GreenEvaluator(L, bc); }

} // namespace

TEST_CASE("frozen spot values at (L=1, t=0.5, x=0.2, y=-0.4)") {
    // high-precision values computed independently from both series
    CHECK(green_images(make(BoundaryCondition::Dirichlet, 1.0), 0.5, 0.2, -0.4) ==
          doctest::Approx(0.220042190198745047).epsilon(1e-12));
    CHECK(green_images(make(BoundaryCondition::Mixed, 1.0), 0.5, 0.2, -0.4) ==
          doctest::Approx(0.28850669539652371702).epsilon(1e-12));
    CHECK(green_images(make(BoundaryCondition::Neumann, 1.0), 0.5, 0.2, -0.4) ==
          doctest::Approx(0.44889173562695685593).epsilon(1e-12));
}

TEST_CASE("dual representation agreement across the sampled domain") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dt(1e-2, 5.0);
    for (double L : {0.5, 1.0, 2.0}) {
        for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Mixed,
                        BoundaryCondition::Neumann}) {
            GreenEvaluator ev(L, bc);
            std::uniform_real_distribution<double> dx(-L, L);
            double worst = 0.0;
            for (int i = 0; i < 300; ++i) {
                const double t = dt(rng), x = dx(rng), y = dx(rng);
                double gi, ge;
                try {
                    gi = green_images(ev, t, x, y);
                    ge = green_eigen(ev, t, x, y);
                } catch (const heatwave::truncation_error&) {
                    continue; // eigen may decline at tiny t; images always valid there
                }
                worst = std::max(worst, std::fabs(gi - ge));
            }
            CHECK(worst <= 10.0 * ev.series_tol);
        }
    }
}

TEST_CASE("dispatch agrees with both branches at the crossover t = L^2") {
    for (double L : {0.5, 1.0, 2.0}) {
        GreenEvaluator ev(L, BoundaryCondition::Dirichlet);
        const double t = L * L;
        const double g = green(ev, t, 0.3 * L, -0.2 * L);
        CHECK(std::fabs(g - green_images(ev, t, 0.3 * L, -0.2 * L)) <= 10 * ev.series_tol);
        CHECK(std::fabs(g - green_eigen(ev, t, 0.3 * L, -0.2 * L)) <= 10 * ev.series_tol);
    }
}

TEST_CASE("images match a brute-force reference sum") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dt(0.01, 2.0), dx(-0.95, 0.95);
    GreenEvaluator ev(1.0, BoundaryCondition::Mixed);
    for (int i = 0; i < 50; ++i) {
        const double t = dt(rng), x = dx(rng), y = dx(rng);
        CHECK(green_images(ev, t, x, y) ==
              doctest::Approx(green_bruteforce(BoundaryCondition::Mixed, 1.0, t, x, y))
                  .epsilon(1e-11));
    }
}

TEST_CASE("boundary behavior") {
    GreenEvaluator d(1.0, BoundaryCondition::Dirichlet);
    // Dirichlet vanishes at x = +-L for any y
    for (double y : {-0.8, 0.0, 0.977}) {
        CHECK(std::fabs(green(d, 0.1, 1.0, y)) < 1e-11);
        CHECK(std::fabs(green(d, 0.1, -1.0, y)) < 1e-11);
    }
    // Neumann dominates the whole-line kernel
    GreenEvaluator nb(1.0, BoundaryCondition::Neumann);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dt(0.01, 5.0), dx(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double t = dt(rng), x = dx(rng), y = dx(rng);
        CHECK(green(nb, t, x, y) >= heat_kernel(t, x - y) * (1 - 1e-12) - 1e-13);
    }
    CHECK(green(nb, 1.0, 0.0, 0.0) >= heat_kernel(1.0, 0.0));
    // domain errors
    CHECK_THROWS_AS(green(d, 0.5, 1.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(green(d, 0.0, 0.5, 0.0), std::domain_error);
}

TEST_CASE("large-t limits of the eigen series") {
    GreenEvaluator nb(1.0, BoundaryCondition::Neumann);
    CHECK(green(nb, 400.0, 0.3, -0.7) == doctest::Approx(0.5).epsilon(1e-10));
    GreenEvaluator d(1.0, BoundaryCondition::Dirichlet);
    CHECK(std::fabs(green(d, 400.0, 0.3, -0.7)) < 1e-12);
}

TEST_CASE("eigen series declines with a truncation error when t is tiny") {
    GreenEvaluator ev(1.0, BoundaryCondition::Dirichlet, 1e-12, 64);
    CHECK_THROWS_AS((void)green_eigen(ev, 1e-7, 0.0, 0.0), heatwave::truncation_error);
    // images handle the same point fine
    CHECK(green_images(ev, 1e-7, 0.0, 0.0) > 0.0);
}

TEST_CASE("discrepancy sign laws and two-sided mixed bound") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dt(0.01, 3.0);
    for (double L : {0.5, 1.0, 2.0}) {
        GreenEvaluator d(L, BoundaryCondition::Dirichlet);
        GreenEvaluator m(L, BoundaryCondition::Mixed);
        GreenEvaluator nb(L, BoundaryCondition::Neumann);
        std::uniform_real_distribution<double> dx(-L, L);
        for (int i = 0; i < 300; ++i) {
            const double t = dt(rng), x = dx(rng), y = dx(rng);
            CHECK(discrepancy(d, t, x, y) > -1e-12);
            CHECK(discrepancy(nb, t, x, y) < 1e-12);
            const double hm = discrepancy(m, t, x, y);
            CHECK(hm <= heat_kernel(t, x - L) + heat_kernel(t, x + L) + 1e-12);
            CHECK(hm >= -heat_kernel(t, x + y - 2 * L) - 1e-12);
            // orderings
            const double gd = green(d, t, x, y), gn = green(nb, t, x, y);
            const double gm = green(m, t, x, y);
            CHECK(gd >= -1e-13);
            CHECK(gd <= heat_kernel(t, x - y) + 1e-12);
            CHECK(gn >= heat_kernel(t, x - y) - 1e-12);
            CHECK(gm <= 1.0 / std::sqrt(M_PI * t) + 1e-12);
            CHECK(gn <= 0.5 / L + 1.0 / std::sqrt(M_PI * t) + 1e-12);
            // Neumann pointwise theta bound
            CHECK(std::fabs(discrepancy(nb, t, x, y)) <=
                  neumann_pointwise_bound(t, x, L) + 1e-12);
        }
    }
}

TEST_CASE("masses: Neumann rule of one, others strictly below") {
    GreenEvaluator nb(1.0, BoundaryCondition::Neumann);
    CHECK(std::fabs(green_mass(nb, 1.0, 0.0) - 1.0) < 1e-10);
    CHECK(std::fabs(green_mass(nb, 0.07, 0.63) - 1.0) < 1e-10);

    GreenEvaluator d(1.0, BoundaryCondition::Dirichlet);
    CHECK(green_mass(d, 1.0, 0.0) == doctest::Approx(0.10797704444410901349).epsilon(1e-9));
    GreenEvaluator m(1.0, BoundaryCondition::Mixed);
    CHECK(green_mass(m, 1.0, 0.0) == doctest::Approx(0.48701271920755116314).epsilon(1e-9));
    // Mixed mass tends to 1 as t -> 0 at interior x
    CHECK(green_mass(m, 1e-4, 0.1) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("neumann discrepancy identity and dirichlet L1 bound") {
    GreenEvaluator nb(2.0, BoundaryCondition::Neumann);
    const double l1 = discrepancy_l1(nb, 0.5, 0.3);
    CHECK(std::fabs(l1 - tail_mass(0.5, 0.3, 2.0)) < 1e-8);
    CHECK(l1 == doctest::Approx(0.05528957278021884488).epsilon(1e-8));

    GreenEvaluator d(2.0, BoundaryCondition::Dirichlet);
    const double l1d = discrepancy_l1(d, 0.5, 0.3);
    CHECK(l1d == doctest::Approx(0.055289560501830398401).epsilon(1e-7));
    CHECK(l1d <= l1_bound(0.5, 0.3, 2.0));

    // any case: L -> infinity drives the discrepancy mass to zero
    GreenEvaluator wide(8.0, BoundaryCondition::Dirichlet);
    CHECK(discrepancy_l1(wide, 0.5, 0.3) < 1e-9);
}

TEST_CASE("l2-time discrepancies against frozen oracles and bounds") {
    const double t = 0.5, x = 0.0, L = 1.0;
    GreenEvaluator d(L, BoundaryCondition::Dirichlet);
    GreenEvaluator m(L, BoundaryCondition::Mixed);
    GreenEvaluator nb(L, BoundaryCondition::Neumann);
    const double vd = discrepancy_l2_time(d, t, x);
    const double vm = discrepancy_l2_time(m, t, x);
    const double vn = discrepancy_l2_time(nb, t, x);
    CHECK(vd == doctest::Approx(0.010236422520164336356).epsilon(1e-6));
    CHECK(vm == doctest::Approx(0.0086022152904102170821).epsilon(1e-6));
    CHECK(vn == doctest::Approx(0.010388152047682739363).epsilon(1e-6));
    CHECK(vd <= l2_time_bound(BoundaryCondition::Dirichlet, t, x, L, 0.0));
    CHECK(vm <= l2_time_bound(BoundaryCondition::Mixed, t, x, L, 0.0));
    CHECK(vn <= l2_time_bound(BoundaryCondition::Neumann, t, x, L, L));
}

TEST_CASE("semigroup identity") {
    GreenEvaluator d(1.0, BoundaryCondition::Dirichlet);
    CHECK(semigroup_residual(d, 0.2, 0.3, 0.4, -0.1) < 1e-8);
    GreenEvaluator nb(1.0, BoundaryCondition::Neumann);
    CHECK(semigroup_residual(nb, 0.5, 0.5, 0.0, 0.0) < 1e-8);
    GreenEvaluator m(1.0, BoundaryCondition::Mixed);
    CHECK(semigroup_residual(m, 0.15, 0.45, -0.3, 0.6) < 1e-8);
    // s -> 0 degenerates to the identity: residual still small
    CHECK(semigroup_residual(d, 1e-4, 0.3, 0.2, 0.25) < 1e-7);
}

TEST_CASE("mixed green assembled from dirichlet on the doubled interval") {
    CHECK(mixed_from_dirichlet(1.0, 0.3, 0.5, 0.5) ==
          doctest::Approx(0.73857784590440969373).epsilon(1e-12));
    GreenEvaluator m(1.0, BoundaryCondition::Mixed);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dt(0.05, 2.0), dx(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = dt(rng), x = dx(rng), y = dx(rng);
        CHECK(std::fabs(mixed_from_dirichlet(1.0, t, x, y) - green(m, t, x, y)) < 1e-10);
    }
    // Dirichlet end of the mixed condition
    CHECK(std::fabs(mixed_from_dirichlet(1.0, 0.2, -1.0, 0.3)) < 1e-11);
}

TEST_CASE("batched evaluation is identical to pointwise evaluation") {
    GreenEvaluator ev(1.0, BoundaryCondition::Mixed);
    double ys[7] = {-0.9, -0.5, -0.1, 0.0, 0.3, 0.8, 1.0};
    double out[7];
    green_images_batch(ev, 0.4, 0.2, ys, out, 7);
    for (int i = 0; i < 7; ++i) CHECK(out[i] == green_images(ev, 0.4, 0.2, ys[i]));
    green_eigen_batch(ev, 1.4, 0.2, ys, out, 7);
    for (int i = 0; i < 7; ++i) CHECK(out[i] == green_eigen(ev, 1.4, 0.2, ys[i]));
}
