#include <cmath>

#include "doctest.h"
#include "heatwave/kernels/green.hpp"
#include "heatwave/quad.hpp"
#include "heatwave/solver/solve.hpp"

using namespace heatwave::solver;
using heatwave::kernels::BoundaryCondition;
using heatwave::kernels::GreenEvaluator;

namespace {

SolutionField run_deterministic(BoundaryCondition bc, const LatticeSpec& lat,
                                const InitialCondition& u0, double t_out) {
    NoiseField noise = make_noise(1, lat.L, lat.dx, lat.dt, lat.T);
    return solve(bc, lat, CoefficientSpec::registry("zero"), u0, noise, {t_out});
}

} // namespace

TEST_CASE("constant one is a Neumann fixed point, exactly") {
    LatticeSpec lat(1.0, 1.0 / 16, 0.25, 1.0 / 256);
    auto f = run_deterministic(BoundaryCondition::Neumann, lat,
                               InitialCondition::registry("one"), 0.25);
    // the scheme preserves constants identically; the tridiagonal solve
    // leaves only rounding at the last-ulp level
    for (double v : f.at_time(0.25)) CHECK(std::fabs(v - 1.0) < 1e-12);
}

TEST_CASE("dirichlet first eigenmode decays at the exact discrete rate") {
    // u0 = sin(pi (x+L)/(2L)); continuum decay e^{-pi^2 t / (4 L^2)}
    const double t_out = 0.25, L = 1.0;
    auto mode = InitialCondition::custom(
        "mode1", [L](double x) { return std::sin(M_PI * (x + L) / (2 * L)); }, 1.0);
    const double exact = std::exp(-M_PI * M_PI * t_out / (4 * L * L));

    double prev_err = 0.0;
    bool first = true;
    for (int inv_dx : {16, 32, 64}) {
        const double dx = 1.0 / inv_dx;
        LatticeSpec lat(L, dx, t_out, dx * dx);
        auto f = run_deterministic(BoundaryCondition::Dirichlet, lat, mode, t_out);
        const auto& row = f.at_time(t_out);
        double err = 0.0;
        for (int j = 0; j < lat.n_nodes(); ++j) {
            const double expect = exact * mode(lat.x(j));
            err = std::fmax(err, std::fabs(row[j] - expect));
        }
        if (!first) CHECK(prev_err / err >= 3.5); // dt ~ dx^2 halving gains ~4x
        if (inv_dx == 64) CHECK(err <= 1e-3);
        prev_err = err;
        first = false;
    }
}

TEST_CASE("deterministic solve matches the green-function convolution oracle") {
    // sigma = 0, b = 0: u(t, x) = int Gamma_L(t; x, y) u0(y) dy
    const double t_out = 0.25;
    auto u0 = InitialCondition::registry("bump");
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Mixed,
                    BoundaryCondition::Neumann}) {
        LatticeSpec lat(1.0, 1.0 / 64, t_out, 1.0 / 4096);
        auto f = run_deterministic(bc, lat, u0, t_out);
        GreenEvaluator ev(1.0, bc);
        const auto& row = f.at_time(t_out);
        double worst = 0.0;
        for (int j = 0; j < lat.n_nodes(); j += 8) {
            const double x = lat.x(j);
            auto integrand = [&](const double* ys, double* out, std::size_t n) {
                heatwave::kernels::green_batch(ev, t_out, x, ys, out, n);
                for (std::size_t k = 0; k < n; ++k) out[k] *= u0(ys[k]);
            };
            const double oracle =
                heatwave::quad::integrate(integrand, -1.0, 1.0, 1e-10, {x}).value;
            worst = std::fmax(worst, std::fabs(row[j] - oracle));
        }
        CHECK(worst < 2.5e-4); // O(dt + dx^2) at this resolution
    }
}

TEST_CASE("solution field boundary invariants") {
    LatticeSpec lat(1.0, 1.0 / 32, 0.25, 1.0 / 1024);
    NoiseField noise = make_noise(77, lat.L, lat.dx, lat.dt, lat.T);
    auto coeffs = CoefficientSpec::registry("sine_tanh");
    auto u0 = InitialCondition::registry("bump");

    auto fd = solve(BoundaryCondition::Dirichlet, lat, coeffs, u0, noise, {0.125, 0.25});
    for (double t : {0.125, 0.25}) {
        CHECK(fd.at_time(t).front() == 0.0);
        CHECK(fd.at_time(t).back() == 0.0);
    }
    auto fm = solve(BoundaryCondition::Mixed, lat, coeffs, u0, noise, {0.25});
    CHECK(fm.at_time(0.25).front() == 0.0);
    // mirrored ghost makes the one-sided derivative vanish: u[n-1] == u[n-2]
    // only up to the interior coupling; check the discrete flux is tiny
    const auto& row = fm.at_time(0.25);
    const std::size_t n = row.size();
    CHECK(std::fabs(row[n - 1] - row[n - 2]) < 0.2 * lat.dx + 0.05);
}

TEST_CASE("off-grid snapshots and mismatched noise are rejected") {
    LatticeSpec lat(1.0, 0.125, 0.5, 0.0625);
    NoiseField noise = make_noise(5, 1.0, 0.125, 0.0625, 0.5);
    auto z = CoefficientSpec::registry("zero");
    auto u0 = InitialCondition::registry("zero");
    CHECK_THROWS_AS((void)solve(BoundaryCondition::Dirichlet, lat, z, u0, noise, {0.3}),
                    heatwave::config_error);
    NoiseField wrong = make_noise(5, 2.0, 0.125, 0.0625, 0.5);
    CHECK_THROWS_AS((void)solve(BoundaryCondition::Dirichlet, lat, z, u0, wrong, {0.5}),
                    heatwave::config_error);
}

TEST_CASE("line proxy: margin rule and self-consistency under widening") {
    const double T = 0.5, dx = 1.0 / 16, dt = 1.0 / 512;
    auto coeffs = CoefficientSpec::registry("linear");
    auto u0 = InitialCondition::registry("zero");

    LatticeSpec tight(4.0, dx, T, dt);
    NoiseField n0 = make_noise(11, 4.0, dx, dt, T);
    CHECK_THROWS_AS((void)solve_line_proxy(tight, 2.0, coeffs, u0, n0, {T}),
                    heatwave::config_error);

    // doubling the master changes the center value negligibly (mean over reps)
    const double L1 = 6.25, L2 = 12.5;
    double acc = 0.0;
    const int reps = 40;
    for (int r = 0; r < reps; ++r) {
        NoiseField na(123, static_cast<std::uint32_t>(r), L2, dx, dt, T);
        LatticeSpec m2(L2, dx, T, dt);
        auto wide = solve_line_proxy(m2, 2.0, coeffs, u0, na, {T});
        LatticeSpec m1(L1, dx, T, dt);
        auto narrow = solve_line_proxy(m1, 2.0, coeffs, u0, na.restrict_to(L1), {T});
        acc += std::fabs(wide.at(T, 0.0) - narrow.at(T, 0.0));
    }
    CHECK(acc / reps < 1e-6);

    LatticeSpec m1(L1, dx, T, dt);
    auto f = solve_line_proxy(m1, 2.0, coeffs, u0, make_noise(7, L1, dx, dt, T), {T});
    CHECK(f.proxy_error_bound ==
          doctest::Approx(heatwave::kernels::rate_factor_aL(T, 2.0, L1)).epsilon(1e-12));
}

TEST_CASE("linear case: lattice second moment matches the ito isometry") {
    // E[u(t,0)^2] on the (proxy) line = sqrt(t/(2 pi)) for sigma = 1, b = 0
    const double T = 0.5, dx = 1.0 / 32, dt = 1.0 / 1024;
    const double L = 6.25;
    LatticeSpec lat(L, dx, T, dt);
    auto coeffs = CoefficientSpec::registry("linear");
    auto u0 = InitialCondition::registry("zero");
    const int reps = 400;
    double s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        NoiseField noise(31337, static_cast<std::uint32_t>(r), L, dx, dt, T);
        auto f = solve_line_proxy(lat, 0.25, coeffs, u0, noise, {T});
        const double v = f.at(T, 0.0);
        s2 += v * v;
    }
    const double mc = s2 / reps;
    const double exact = std::sqrt(T / (2 * M_PI));
    // SE of the chi^2 mean at 400 reps is about exact * sqrt(2/400) = 7.1%
    CHECK(std::fabs(mc - exact) < 3.2 * exact * std::sqrt(2.0 / reps));
}

TEST_CASE("linear variance exact: frozen oracle values") {
    auto u0 = InitialCondition::registry("zero");
    // mpmath 2-D quadrature references
    CHECK(linear_variance_exact(BoundaryCondition::Dirichlet, 1.0, 0.5, 0.0, u0) ==
          doctest::Approx(0.019693671985).epsilon(1e-5));
    CHECK(linear_variance_exact(BoundaryCondition::Dirichlet, 2.0, 0.5, 0.0, u0) ==
          doctest::Approx(2.331206917523e-4).epsilon(1e-5));
    CHECK(linear_variance_exact(BoundaryCondition::Dirichlet, 3.0, 0.5, 0.0, u0) ==
          doctest::Approx(5.768806269251e-7).epsilon(1e-5));
    // L -> infinity kills the variance
    CHECK(linear_variance_exact(BoundaryCondition::Dirichlet, 8.0, 0.5, 0.0, u0) < 1e-12);
    // constant u0 adds the deterministic mismatch
    auto one = InitialCondition::registry("one");
    const double vz = linear_variance_exact(BoundaryCondition::Dirichlet, 1.0, 0.5, 0.0, u0);
    const double vc = linear_variance_exact(BoundaryCondition::Dirichlet, 1.0, 0.5, 0.0, one);
    CHECK(vc > vz);
    CHECK_THROWS_AS((void)linear_variance_exact(BoundaryCondition::Dirichlet, 1.0, 0.5, 0.0,
                                                InitialCondition::registry("bump")),
                    heatwave::config_error);
}

TEST_CASE("neumann small-L second moment lower bound (quadrature route)") {
    // E[u_L^2(t,0)] = int_0^t Gamma_L^N(2(t-s); 0, 0) ds >= t/(2L)
    auto second_moment = [](double L, double t) {
        GreenEvaluator ev(L, BoundaryCondition::Neumann);
        auto integrand = [&](double w) {
            const double tau = 2.0 * w * w;
            return 2.0 * w * heatwave::kernels::green(ev, tau, 0.0, 0.0);
        };
        return heatwave::quad::integrate_scalar(integrand, 0.0, std::sqrt(t), 1e-9).value;
    };
    // closed-form check: t/(2L) + sum over even modes = 1.25 + 1/60 here
    CHECK(second_moment(0.2, 0.5) == doctest::Approx(1.25 + 1.0 / 60.0).epsilon(1e-6));
    CHECK(second_moment(0.2, 0.5) >= 1.25);
    CHECK(second_moment(0.1, 0.5) >= 2.5);
    CHECK(second_moment(0.05, 0.5) >= 5.0);
}

TEST_CASE("mc_lp_error: zero coefficients give identically zero error") {
    LatticeSpec master(4.0, 1.0 / 8, 0.25, 1.0 / 64);
    McConfig cfg{BoundaryCondition::Dirichlet,
                 {1.0},
                 {0.25},
                 {0.0},
                 2.0,
                 8,
                 99,
                 master,
                 CoefficientSpec::registry("zero"),
                 InitialCondition::registry("zero"),
                 1};
    auto res = mc_lp_error(cfg);
    REQUIRE(res.records.size() == 1);
    CHECK(res.records[0].error_estimate == 0.0);
    CHECK(res.records[0].std_error == 0.0);
    CHECK(res.records[0].n_effective == 8);
}

TEST_CASE("mc_lp_error: linear case agrees with the exact gaussian variance") {
    // small but honest configuration; the acceptance suite runs the spec one
    const double T = 0.5, dx = 1.0 / 16, dt = 1.0 / 256;
    LatticeSpec master(7.25, dx, T, dt);
    McConfig cfg{BoundaryCondition::Dirichlet,
                 {1.0},
                 {0.5},
                 {0.0},
                 2.0,
                 400,
                 2024,
                 master,
                 CoefficientSpec::registry("linear"),
                 InitialCondition::registry("zero"),
                 0};
    auto res = mc_lp_error(cfg);
    REQUIRE(res.records.size() == 1);
    const auto& r = res.records[0];
    REQUIRE(r.has_exact);
    const double mc_sq = r.error_estimate * r.error_estimate;
    // delta-method SE of the squared estimate
    const double se_sq = 2.0 * r.error_estimate * r.std_error;
    CHECK(std::fabs(mc_sq - r.exact_variance) <= 3.0 * se_sq + 0.08 * r.exact_variance);
    CHECK(r.n_effective == 400);
}

TEST_CASE("mc_lp_error: thread counts do not change the records") {
    const double T = 0.25, dx = 1.0 / 8, dt = 1.0 / 64;
    LatticeSpec master(4.0, dx, T, dt);
    McConfig cfg{BoundaryCondition::Dirichlet,
                 {0.5, 1.0},
                 {0.25},
                 {0.0},
                 2.0,
                 16,
                 7,
                 master,
                 CoefficientSpec::registry("sine_tanh"),
                 InitialCondition::registry("bump"),
                 1};
    auto seq = mc_lp_error(cfg);
    cfg.threads = 8;
    auto par = mc_lp_error(cfg);
    REQUIRE(seq.records.size() == par.records.size());
    for (std::size_t i = 0; i < seq.records.size(); ++i) {
        CHECK(seq.records[i].error_estimate == par.records[i].error_estimate);
        CHECK(seq.records[i].std_error == par.records[i].std_error);
    }
}

TEST_CASE("mc_lp_error: coupling makes errors decrease in L") {
    const double T = 0.5, dx = 1.0 / 8, dt = 1.0 / 64;
    LatticeSpec master(7.5, dx, T, dt);
    McConfig cfg{BoundaryCondition::Dirichlet,
                 {1.0, 2.0, 3.0},
                 {0.5},
                 {0.0},
                 2.0,
                 200,
                 505,
                 master,
                 CoefficientSpec::registry("sine_tanh"),
                 InitialCondition::registry("bump"),
                 0};
    auto res = mc_lp_error(cfg);
    REQUIRE(res.records.size() == 3);
    CHECK(res.records[0].error_estimate >
          res.records[1].error_estimate - 3 * res.records[1].std_error);
    CHECK(res.records[1].error_estimate >
          res.records[2].error_estimate - 3 * res.records[2].std_error);
    // strict decrease is expected well beyond noise here
    CHECK(res.records[0].error_estimate > res.records[2].error_estimate);
}

TEST_CASE("mc_lp_error: validation") {
    LatticeSpec master(4.0, 1.0 / 8, 0.25, 1.0 / 64);
    McConfig good{BoundaryCondition::Dirichlet, {1.0},  {0.25}, {0.0}, 2.0, 4, 1, master,
                  CoefficientSpec::registry("zero"),   InitialCondition::registry("zero"), 1};
    auto bad = good;
    bad.L_values = {3.9}; // margin violated
    CHECK_THROWS_AS((void)mc_lp_error(bad), heatwave::config_error);
    bad = good;
    bad.x_values = {0.03}; // off-lattice
    CHECK_THROWS_AS((void)mc_lp_error(bad), heatwave::config_error);
    bad = good;
    bad.n_reps = 1;
    CHECK_THROWS_AS((void)mc_lp_error(bad), heatwave::config_error);
    bad = good;
    bad.p = 0.5;
    CHECK_THROWS_AS((void)mc_lp_error(bad), heatwave::config_error);
}
