#include "heatwave/kernels/heat.hpp"

#include <cmath>
#include <stdexcept>

namespace heatwave::kernels {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double heat_kernel(double t, double x) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be > 0");
    return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double gaussian_tail_exact(double a, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::domain_error("gaussian_tail_exact: sigma2 must be > 0");
    if (!(a >= 0.0)) throw std::domain_error("gaussian_tail_exact: a must be >= 0");
    return 0.5 * std::erfc(a / std::sqrt(2.0 * sigma2));
}

double gaussian_tail_bound(double a, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::domain_error("gaussian_tail_bound: sigma2 must be > 0");
    if (!(a > 0.0)) throw std::domain_error("gaussian_tail_bound: a must be > 0");
    const double sigma = std::sqrt(sigma2);
    const double m = std::fmin(1.0, std::sqrt(2.0 / kPi) * sigma / a);
    return 0.5 * m * std::exp(-a * a / (2.0 * sigma2));
}

double k_factor(double t, double x, double L) {
    if (!(t > 0.0)) throw std::domain_error("k_factor: t must be > 0");
    if (!(std::abs(x) < L)) throw std::domain_error("k_factor: |x| must be < L");
    const double m = std::fmax(1.0 / (L - x), 1.0 / (L + x));
    return std::fmin(0.5, std::sqrt(t / kPi) * m);
}

double rate_factor_aL(double t, double x, double L) {
    if (!(t > 0.0)) throw std::domain_error("rate_factor_aL: t must be > 0");
    if (!(std::abs(x) <= L)) throw std::domain_error("rate_factor_aL: |x| must be <= L");
    const double dm = L - x, dp = L + x;
    return std::exp(-dm * dm / (8.0 * t)) + std::exp(-dp * dp / (8.0 * t));
}

double tail_mass(double t, double x, double L) {
    if (!(t > 0.0)) throw std::domain_error("tail_mass: t must be > 0");
    if (!(std::abs(x) < L)) throw std::domain_error("tail_mass: |x| must be < L");
    // Gamma(t, .) is the N(0, 2t) density
    return gaussian_tail_exact(L - x, 2.0 * t) + gaussian_tail_exact(L + x, 2.0 * t);
}

double theta(double a) {
    if (!(a > 0.0)) throw std::domain_error("theta: a must be > 0");
    double sum = 0.0;
    for (long m = 0;; ++m) {
        const double term = std::exp(-a * static_cast<double>(m) * static_cast<double>(m));
        sum += term;
        if (term < 1e-15) break;
    }
    return sum;
}

double exp_bracket_4t(double t, double x, double L) {
    const double dm = L - x, dp = L + x;
    return std::exp(-dm * dm / (4.0 * t)) + std::exp(-dp * dp / (4.0 * t));
}

BoundBundle bound_bundle(double t, double x, double L) {
    return {k_factor(t, x, L), rate_factor_aL(t, x, L), tail_mass(t, x, L)};
}

} // namespace heatwave::kernels
