#pragma once

// Whole-line heat kernel and the Gaussian tail / bound quantities that the
// interval comparisons are phrased in.

namespace heatwave::kernels {

// (4 pi t)^{-1/2} exp(-x^2 / (4t)); t <= 0 is a domain error.
double heat_kernel(double t, double x);

// int_a^inf of the N(0, sigma2) density, via erfc. Requires a >= 0, sigma2 > 0.
double gaussian_tail_exact(double a, double sigma2);

// (1/2) min(1, sqrt(2/pi) sigma/a) exp(-a^2/(2 sigma2)). Requires a > 0.
double gaussian_tail_bound(double a, double sigma2);

// min(1/2, sqrt(t/pi) max(1/(L-x), 1/(L+x))); requires t > 0, |x| < L.
double k_factor(double t, double x, double L);

// exp(-(L-x)^2/(8t)) + exp(-(L+x)^2/(8t)); requires t > 0, |x| <= L.
double rate_factor_aL(double t, double x, double L);

// exact mass of Gamma(t, x-.) outside [-L, L]; requires t > 0, |x| < L.
double tail_mass(double t, double x, double L);

// sum_{m>=0} exp(-a m^2), summed until the next term drops below 1e-15.
double theta(double a);

// the bracket [exp(-(L-x)^2/(4t)) + exp(-(L+x)^2/(4t))] most bounds carry
double exp_bracket_4t(double t, double x, double L);

struct BoundBundle {
    double k_factor;  // in (0, 1/2]
    double a_L;       // in (0, 2]
    double tail_mass; // in [0, 1]
};

BoundBundle bound_bundle(double t, double x, double L);

} // namespace heatwave::kernels
