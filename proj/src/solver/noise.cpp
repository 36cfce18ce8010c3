#include "heatwave/solver/noise.hpp"

#include <cmath>

#include "heatwave/simd/dispatch.hpp"

namespace heatwave::solver {

NoiseField::NoiseField(std::uint64_t seed, std::uint32_t replicate, double L_master,
                       double dx, double dt, double T)
    : seed_(seed), replicate_(replicate), L_master_(L_master), L_(L_master), dx_(dx),
      dt_(dt), T_(T), offset_(0) {
    // reuse the lattice validation (integer counts, index capacity)
    LatticeSpec check(L_master, dx, T, dt);
    n_nodes_ = check.n_nodes();
}

NoiseField NoiseField::restrict_to(double L_sub) const {
    if (!(L_sub > 0.0) || L_sub > L_ * (1.0 + 1e-12))
        throw config_error("restrict_noise: need 0 < L_sub <= L");
    const double shift = (L_ - L_sub) / dx_;
    const long delta = std::lround(shift);
    if (std::fabs(shift - static_cast<double>(delta)) > 1e-9 * (shift + 1.0))
        throw config_error("restrict_noise: L - L_sub must be a multiple of dx");
    NoiseField view = *this;
    view.L_ = L_sub;
    view.offset_ = offset_ + static_cast<int>(delta);
    view.n_nodes_ = n_nodes_ - 2 * static_cast<int>(delta);
    return view;
}

double NoiseField::xi(int step, int j) const {
    double out;
    simd::active().cell_normals(seed_, replicate_, static_cast<std::uint32_t>(step),
                                static_cast<std::uint32_t>(offset_ + j), &out, 1);
    return out;
}

void NoiseField::fill_row(int step, int j0, double* out, int n) const {
    simd::active().cell_normals(seed_, replicate_, static_cast<std::uint32_t>(step),
                                static_cast<std::uint32_t>(offset_ + j0), out,
                                static_cast<std::size_t>(n));
}

double NoiseField::increment_scale() const { return std::sqrt(dt_ * dx_); }

NoiseField make_noise(std::uint64_t seed, double L_master, double dx, double dt, double T) {
    return NoiseField(seed, 0, L_master, dx, dt, T);
}

} // namespace heatwave::solver
