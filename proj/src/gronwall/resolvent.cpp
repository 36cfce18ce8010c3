#include "heatwave/gronwall/resolvent.hpp"

#include <cmath>
#include <stdexcept>

#include "heatwave/kernels/heat.hpp"
#include "heatwave/simd/dispatch.hpp"

namespace heatwave::gronwall {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
} // namespace

const char* to_string(VariantKind k) {
    switch (k) {
    case VariantKind::Stochastic: return "stochastic";
    case VariantKind::NoDrift: return "nodrift";
    case VariantKind::Deterministic: return "deterministic";
    }
    return "?";
}

KernelVariant::KernelVariant(VariantKind k, double c) : kind(k), C(c) {
    if (!(c >= 0.0)) throw std::invalid_argument("KernelVariant: C must be >= 0");
}

double j_kernel(VariantKind kind, double r, double z) {
    if (!(r > 0.0)) throw std::domain_error("j_kernel: r must be > 0");
    const double g = kernels::heat_kernel(r, z);
    switch (kind) {
    case VariantKind::Stochastic: return g / std::sqrt(4.0 * kPi * r);
    case VariantKind::NoDrift: return g * g;
    case VariantKind::Deterministic: return g;
    }
    return 0.0;
}

double resolvent_prefactor(const KernelVariant& variant, double t) {
    if (!(t > 0.0)) throw std::domain_error("resolvent_closed: t must be > 0");
    const double C = variant.C;
    if (C == 0.0) return 0.0;
    switch (variant.kind) {
    case VariantKind::Stochastic:
        return C / (2.0 * std::sqrt(kPi * t)) +
               0.5 * C * C * std::exp(C * C * t / 4.0) * norm_cdf(C * std::sqrt(t / 2.0));
    case VariantKind::NoDrift:
        return C / std::sqrt(8.0 * kPi * t) +
               0.25 * C * C * std::exp(C * C * t / 8.0) * norm_cdf(C * std::sqrt(t / 4.0));
    case VariantKind::Deterministic: return C * std::exp(C * t);
    }
    return 0.0;
}

double resolvent_closed(const KernelVariant& variant, double t, double x) {
    const double pref = resolvent_prefactor(variant, t);
    if (pref == 0.0) return 0.0;
    // the no-drift chain contracts the spatial profile to Gamma(t/2, .)
    const double spatial = (variant.kind == VariantKind::NoDrift)
                               ? kernels::heat_kernel(t / 2.0, x)
                               : kernels::heat_kernel(t, x);
    return pref * spatial;
}

GridField sample_field(const SpaceTimeGrid& grid,
                       const std::function<double(double, double)>& f) {
    GridField out(grid);
    for (int i = 0; i < grid.nt(); ++i) {
        const double t = grid.time_center(i);
        double* row = out.row(i);
        for (int j = 0; j < grid.nx(); ++j) row[j] = f(t, grid.x(j));
    }
    return out;
}

GridField sample_j(VariantKind kind, const SpaceTimeGrid& grid) {
    GridField out(grid);
    const int nx = grid.nx();
    std::vector<double> args(nx);
    for (int i = 0; i < grid.nt(); ++i) {
        const double r = grid.time_center(i);
        // Gaussian rows through the batched exp
        const double inv4t = 1.0 / (4.0 * r);
        double scale = 1.0 / std::sqrt(4.0 * kPi * r);
        double expo_mult = 1.0;
        switch (kind) {
        case VariantKind::Stochastic: scale /= std::sqrt(4.0 * kPi * r); break;
        case VariantKind::NoDrift:
            scale *= scale;  // Gamma^2: square of the normalization
            expo_mult = 2.0; // and twice the exponent
            break;
        case VariantKind::Deterministic: break;
        }
        double* row = out.row(i);
        for (int j = 0; j < nx; ++j) {
            const double z = grid.x(j);
            args[j] = -(z * z) * inv4t * expo_mult;
        }
        simd::active().exp_batch(args.data(), row, nx);
        for (int j = 0; j < nx; ++j) row[j] *= scale;
    }
    return out;
}

GridField sample_resolvent_closed(const KernelVariant& variant, const SpaceTimeGrid& grid) {
    GridField out(grid);
    const int nx = grid.nx();
    std::vector<double> args(nx);
    for (int i = 0; i < grid.nt(); ++i) {
        const double t = grid.time_center(i);
        const double pref = resolvent_prefactor(variant, t);
        const double ts = (variant.kind == VariantKind::NoDrift) ? t / 2.0 : t;
        const double inv4t = 1.0 / (4.0 * ts);
        const double scale = pref / std::sqrt(4.0 * kPi * ts);
        double* row = out.row(i);
        for (int j = 0; j < nx; ++j) {
            const double z = grid.x(j);
            args[j] = -(z * z) * inv4t;
        }
        simd::active().exp_batch(args.data(), row, nx);
        for (int j = 0; j < nx; ++j) row[j] *= scale;
    }
    return out;
}

} // namespace heatwave::gronwall
