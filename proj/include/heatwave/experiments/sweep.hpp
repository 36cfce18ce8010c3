#pragma once

// Localization sweeps over L, decay-rate fits against the L^2 law, the
// uniform envelope constant of the error bound, the small-L Neumann blowup
// check, and machine-readable emission of the results.

#include <string>
#include <vector>

#include "heatwave/solver/solve.hpp"

namespace heatwave::experiments {

using solver::LocalizationRecord;

struct SweepConfig {
    kernels::BoundaryCondition bc = kernels::BoundaryCondition::Dirichlet;
    std::vector<double> L_values; // ascending
    std::vector<double> t_values;
    std::vector<double> x_values;
    double p = 2.0;
    int n_reps = 0; // 0 selects the quadrature path (linear case only)
    double dx = 1.0 / 32;
    double dt = 1.0 / 1024;
    std::string coeffs_id = "linear";
    std::string u0_id = "zero";
    std::uint64_t base_seed = 0;
    int threads = 0;
    double L_master = 0.0; // 0 = smallest aligned value satisfying the margin rule
};

// One record per (L, t, x). Monte Carlo for general coefficients; the exact
// Gaussian quadrature path when the linear registry entry is selected with
// n_reps = 0 (records then carry std_error = 0 and exact_variance).
std::vector<LocalizationRecord> sweep(const SweepConfig& config);

struct RateFit {
    enum class Regime { Theorem8t, Sharp4t };
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double theoretical_slope = 0;
    Regime regime = Regime::Sharp4t;
    int n_points = 0;
};

// Least squares of log(error) against L^2 over the asymptotic fit window
// (L-|x|)^2/(8t) >= 2. Records must share (t, x) and carry positive errors;
// fewer than 4 admissible points is a config error.
RateFit fit_rate(const std::vector<LocalizationRecord>& records, RateFit::Regime regime);

struct EnvelopeFit {
    double fitted_c = 0;   // max of error / ((1 + |u0|_inf) a_L)
    bool trend_ok = true;  // ratio across the top-3 L window stays flat
    double worst_trend_ratio = 0;
    double worst_trend_threshold = 0;
};

EnvelopeFit fit_envelope_constant(const std::vector<LocalizationRecord>& records,
                                  double u0_sup_norm);

struct SmallLReport {
    double t = 0;
    double L = 0;
    double second_moment = 0; // int_0^t Gamma_L^N(2(t-s); 0, 0) ds
    double lower_bound = 0;   // t / (2L)
    bool passed = false;
};

SmallLReport neumann_small_l_check(double t, double L, double quad_tol = 1e-9);

// CSV columns: bc,L,t,x,p,error,std_error,bound_aL,exact_variance,n_effective,seed
// (floats at 17 significant digits; exact_variance blank when not computed)
void emit(const std::vector<LocalizationRecord>& records, const std::string& path,
          const std::string& format);
std::vector<LocalizationRecord> parse_csv(const std::string& path);

} // namespace heatwave::experiments
