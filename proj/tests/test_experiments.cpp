#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "heatwave/experiments/sweep.hpp"

using namespace heatwave::experiments;
using heatwave::kernels::BoundaryCondition;

namespace {

std::vector<LocalizationRecord> synthetic_decay(double t, double slope_denom_t,
                                                const std::vector<double>& Ls) {
    std::vector<LocalizationRecord> recs;
    for (double L : Ls) {
        LocalizationRecord r;
        r.bc = "dirichlet";
        r.L = L;
        r.t = t;
        r.x = 0.0;
        r.p = 2.0;
        r.error_estimate = std::exp(-L * L / (slope_denom_t * t));
        r.std_error = 0.0;
        r.bound_aL = heatwave::kernels::rate_factor_aL(t, 0.0, L);
        recs.push_back(r);
    }
    return recs;
}

} // namespace

TEST_CASE("quadrature sweep: monotone in L and envelope-compatible") {
    SweepConfig cfg;
    cfg.bc = BoundaryCondition::Dirichlet;
    cfg.L_values = {1.0, 1.5, 2.0, 2.5, 3.0};
    cfg.t_values = {0.5};
    cfg.x_values = {0.0};
    cfg.n_reps = 0;
    cfg.coeffs_id = "linear";
    cfg.u0_id = "zero";
    auto recs = sweep(cfg);
    REQUIRE(recs.size() == 5);
    for (std::size_t i = 0; i + 1 < recs.size(); ++i)
        CHECK(recs[i].error_estimate > recs[i + 1].error_estimate);
    for (const auto& r : recs) {
        CHECK(r.has_exact);
        CHECK(r.std_error == 0.0);
        CHECK(r.error_estimate == doctest::Approx(std::sqrt(r.exact_variance)));
    }
    auto env = fit_envelope_constant(recs, 0.0);
    CHECK(env.fitted_c > 0.0);
    CHECK(env.trend_ok);
}

TEST_CASE("zero-coefficient MC sweep gives all-zero errors") {
    SweepConfig cfg;
    cfg.bc = BoundaryCondition::Dirichlet;
    cfg.L_values = {1.0};
    cfg.t_values = {0.25};
    cfg.x_values = {0.0};
    cfg.n_reps = 100;
    cfg.dx = 1.0 / 8;
    cfg.dt = 1.0 / 64;
    cfg.coeffs_id = "zero";
    cfg.u0_id = "zero";
    cfg.base_seed = 3;
    auto recs = sweep(cfg);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].error_estimate == 0.0);
}

TEST_CASE("sweep validation") {
    SweepConfig cfg;
    cfg.L_values = {2.0, 1.0}; // not ascending
    cfg.t_values = {0.5};
    cfg.x_values = {0.0};
    CHECK_THROWS_AS((void)sweep(cfg), heatwave::config_error);
    cfg.L_values = {1.0};
    cfg.n_reps = 50; // too few for MC
    cfg.coeffs_id = "sine_tanh";
    CHECK_THROWS_AS((void)sweep(cfg), heatwave::config_error);
    cfg.n_reps = 0; // quadrature path rejects non-linear coefficients
    CHECK_THROWS_AS((void)sweep(cfg), heatwave::config_error);
}

TEST_CASE("fit_rate: synthetic exact inputs recover their slopes") {
    std::vector<double> Ls;
    for (double L = 2.1; L < 4.25; L += 0.3) Ls.push_back(L);

    // error = exp(-L^2/(8t)) -> slope exactly -1/(8t)
    auto recs8 = synthetic_decay(0.5, 8.0, Ls);
    auto fit8 = fit_rate(recs8, RateFit::Regime::Theorem8t);
    CHECK(fit8.slope == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(fit8.theoretical_slope == doctest::Approx(-0.25));
    CHECK(fit8.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    auto recs4 = synthetic_decay(0.5, 4.0, Ls);
    auto fit4 = fit_rate(recs4, RateFit::Regime::Sharp4t);
    CHECK(fit4.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit4.theoretical_slope == doctest::Approx(-0.5));

    // the asymptotic window drops L with (L-|x|)^2/(8t) < 2
    CHECK(fit8.n_points == 5);
}

TEST_CASE("fit_rate input validation") {
    auto recs = synthetic_decay(0.5, 8.0, {2.1, 2.4});
    CHECK_THROWS_AS((void)fit_rate(recs, RateFit::Regime::Theorem8t),
                    heatwave::config_error);
    auto mixed = synthetic_decay(0.5, 8.0, {3.0, 3.3, 3.6, 3.9, 4.2});
    mixed[1].t = 0.25;
    CHECK_THROWS_AS((void)fit_rate(mixed, RateFit::Regime::Theorem8t),
                    heatwave::config_error);
}

TEST_CASE("linear-case rate reproduction (criterion 9 shape)") {
    SweepConfig cfg;
    cfg.bc = BoundaryCondition::Dirichlet;
    for (double L = 2.1; L < 4.25; L += 0.3) cfg.L_values.push_back(L);
    cfg.t_values = {0.5};
    cfg.x_values = {0.0};
    cfg.n_reps = 0;
    auto recs = sweep(cfg);
    auto fit = fit_rate(recs, RateFit::Regime::Sharp4t);
    CHECK(std::fabs(fit.slope - fit.theoretical_slope) <=
          0.15 * std::fabs(fit.theoretical_slope));
    CHECK(fit.r_squared > 0.999);
}

TEST_CASE("envelope constant: synthetic exact ratio") {
    auto recs = synthetic_decay(0.5, 8.0, {2.0, 2.5, 3.0, 3.5});
    for (auto& r : recs) r.error_estimate = 0.7 * r.bound_aL;
    auto env = fit_envelope_constant(recs, 0.0);
    CHECK(env.fitted_c == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(env.trend_ok);

    // inject an upward trend in the top-3 window with zero SE
    recs.back().error_estimate = 0.9 * recs.back().bound_aL;
    auto env2 = fit_envelope_constant(recs, 0.0);
    CHECK_FALSE(env2.trend_ok);
}

TEST_CASE("small-L neumann check meets the paper's lower bounds") {
    for (auto [L, lb] : {std::pair{0.2, 1.25}, {0.1, 2.5}, {0.05, 5.0}}) {
        auto rep = neumann_small_l_check(0.5, L);
        CHECK(rep.passed);
        CHECK(rep.lower_bound == doctest::Approx(lb));
        CHECK(rep.second_moment >= lb);
        // t/(2L) scaling when L halves
    }
    CHECK(neumann_small_l_check(0.5, 0.1).lower_bound ==
          doctest::Approx(2.0 * neumann_small_l_check(0.5, 0.2).lower_bound));
}

TEST_CASE("emit and parse round-trip bit for bit") {
    SweepConfig cfg;
    cfg.bc = BoundaryCondition::Mixed;
    cfg.L_values = {1.0, 2.0};
    cfg.t_values = {0.5};
    cfg.x_values = {0.25};
    cfg.n_reps = 0;
    auto recs = sweep(cfg);
    recs[1].has_exact = false; // exercise the blank-field path

    const std::string path = "test_emit_roundtrip.csv";
    emit(recs, path, "csv");
    auto back = parse_csv(path);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].bc == recs[i].bc);
        CHECK(back[i].L == recs[i].L);
        CHECK(back[i].t == recs[i].t);
        CHECK(back[i].x == recs[i].x);
        CHECK(back[i].error_estimate == recs[i].error_estimate);
        CHECK(back[i].std_error == recs[i].std_error);
        CHECK(back[i].bound_aL == recs[i].bound_aL);
        CHECK(back[i].has_exact == recs[i].has_exact);
        if (recs[i].has_exact) CHECK(back[i].exact_variance == recs[i].exact_variance);
    }
    std::remove(path.c_str());

    // header-only file for an empty record list
    emit({}, path, "csv");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "bc,L,t,x,p,error,std_error,bound_aL,exact_variance,n_effective,seed");
    CHECK_FALSE(std::getline(in, line));
    in.close();
    std::remove(path.c_str());

    emit(recs, path, "json");
    std::ifstream jin(path);
    CHECK(jin.good());
    jin.close();
    std::remove(path.c_str());

    CHECK_THROWS_AS(emit(recs, path, "xml"), heatwave::config_error);
}
