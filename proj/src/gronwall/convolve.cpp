#include "heatwave/gronwall/convolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "heatwave/errors.hpp"

namespace heatwave::gronwall {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

int next_fast_size(int n) {
    // smallest 5-smooth integer >= n (FFTW is efficient on these)
    auto smooth = [](int v) {
        for (int p : {2, 3, 5})
            while (v % p == 0) v /= p;
        return v == 1;
    };
    while (!smooth(n)) ++n;
    return n;
}

} // namespace

struct SpaceTimeConvolver::Impl {
    int nt, nx;
    int mt, mx;      // padded sizes (no circular aliasing in the used range)
    int mxc;         // complex row length
    double* real_buf;
    fftw_complex* spec_a;
    fftw_complex* spec_b;
    fftw_complex* spec_kernel;
    bool kernel_set = false;
    fftw_plan fwd;
    fftw_plan inv;

    Impl(int nt_, int nx_) : nt(nt_), nx(nx_) {
        mt = next_fast_size(2 * nt);
        mx = next_fast_size(2 * nx - 1);
        mxc = mx / 2 + 1;
        real_buf = fftw_alloc_real(static_cast<std::size_t>(mt) * mx);
        spec_a = fftw_alloc_complex(static_cast<std::size_t>(mt) * mxc);
        spec_b = fftw_alloc_complex(static_cast<std::size_t>(mt) * mxc);
        spec_kernel = fftw_alloc_complex(static_cast<std::size_t>(mt) * mxc);
        if (!real_buf || !spec_a || !spec_b || !spec_kernel)
            throw std::bad_alloc();
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd = fftw_plan_dft_r2c_2d(mt, mx, real_buf, spec_a, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(mt, mx, spec_a, real_buf, FFTW_ESTIMATE);
    }

    ~Impl() {
        {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex());
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(inv);
        }
        fftw_free(real_buf);
        fftw_free(spec_a);
        fftw_free(spec_b);
        fftw_free(spec_kernel);
    }

    // load field (optionally trapezoid-weighted in space) into the padded
    // real buffer and transform into dst
    void forward(const GridField& f, bool weight, fftw_complex* dst) {
        std::memset(real_buf, 0, sizeof(double) * static_cast<std::size_t>(mt) * mx);
        for (int i = 0; i < nt; ++i) {
            const double* src = f.row(i);
            double* row = real_buf + static_cast<std::size_t>(i) * mx;
            std::memcpy(row, src, sizeof(double) * nx);
            if (weight) {
                row[0] *= 0.5;
                row[nx - 1] *= 0.5;
            }
        }
        fftw_execute_dft_r2c(fwd, real_buf, dst);
    }

    // out[k][a] = scale * conv[k-1][a + j0]
    void multiply_inverse(const fftw_complex* A, const fftw_complex* B, double scale,
                          GridField& out) {
        const std::size_t n = static_cast<std::size_t>(mt) * mxc;
        for (std::size_t idx = 0; idx < n; ++idx) {
            const double ar = A[idx][0], ai = A[idx][1];
            const double br = B[idx][0], bi = B[idx][1];
            spec_b[idx][0] = ar * br - ai * bi;
            spec_b[idx][1] = ar * bi + ai * br;
        }
        fftw_execute_dft_c2r(inv, spec_b, real_buf);
        const double norm = scale / (static_cast<double>(mt) * mx);
        const int j0 = (nx - 1) / 2;
        for (int k = 0; k < nt; ++k) {
            double* dst = out.row(k);
            if (k == 0) {
                std::memset(dst, 0, sizeof(double) * nx);
                continue;
            }
            const double* src = real_buf + static_cast<std::size_t>(k - 1) * mx + j0;
            for (int a = 0; a < nx; ++a) dst[a] = src[a] * norm;
        }
    }
};

SpaceTimeConvolver::SpaceTimeConvolver(const SpaceTimeGrid& grid) : grid_(grid) {
    if (!grid.symmetric())
        throw std::invalid_argument(
            "SpaceTimeConvolver: grid must be symmetric (x_min = -x_max, odd node count)");
    impl_ = std::make_unique<Impl>(grid.nt(), grid.nx());
}

SpaceTimeConvolver::~SpaceTimeConvolver() = default;

GridField SpaceTimeConvolver::convolve(const GridField& f, const GridField& g) {
    if (!f.grid.same_shape(grid_) || !g.grid.same_shape(grid_))
        throw std::invalid_argument("convolve: field grids do not match the convolver grid");
    impl_->forward(f, false, impl_->spec_a);
    impl_->forward(g, true, impl_->spec_b);
    GridField out(grid_);
    impl_->multiply_inverse(impl_->spec_a, impl_->spec_b, grid_.dt * grid_.dx, out);
    return out;
}

void SpaceTimeConvolver::set_kernel(const GridField& j) {
    if (!j.grid.same_shape(grid_))
        throw std::invalid_argument("set_kernel: grid mismatch");
    impl_->forward(j, false, impl_->spec_kernel);
    impl_->kernel_set = true;
}

GridField SpaceTimeConvolver::convolve_kernel(const GridField& g) {
    if (!impl_->kernel_set) throw std::logic_error("convolve_kernel: no kernel cached");
    if (!g.grid.same_shape(grid_))
        throw std::invalid_argument("convolve_kernel: grid mismatch");
    impl_->forward(g, true, impl_->spec_a);
    GridField out(grid_);
    impl_->multiply_inverse(impl_->spec_kernel, impl_->spec_a, grid_.dt * grid_.dx, out);
    return out;
}

GridField convolve_st(const GridField& f, const GridField& g) {
    SpaceTimeConvolver conv(f.grid);
    return conv.convolve(f, g);
}

namespace {

// midpoint defect of the first time cell of J: the L1 mass the rectangle
// rule assigns vs the true integrable-singularity mass
double first_cell_defect(const KernelVariant& variant, double dt) {
    switch (variant.kind) {
    case VariantKind::Stochastic:
        return variant.C * std::sqrt(dt / kPi) * (1.0 - 1.0 / std::sqrt(2.0));
    case VariantKind::NoDrift:
        return variant.C * std::sqrt(dt / (2.0 * kPi)) * (1.0 - 1.0 / std::sqrt(2.0));
    case VariantKind::Deterministic: return 0.0;
    }
    return 0.0;
}

} // namespace

ResolventSeries resolvent_series(const KernelVariant& variant, const SpaceTimeGrid& grid,
                                 int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("resolvent_series: n_terms must be >= 1");
    const double C = variant.C;
    GridField j = sample_j(variant.kind, grid);

    GridField term(grid);
    for (std::size_t idx = 0; idx < j.v.size(); ++idx) term.v[idx] = C * j.v[idx];
    GridField acc = term;

    if (n_terms > 1) {
        SpaceTimeConvolver conv(grid);
        conv.set_kernel(j);
        for (int l = 2; l <= n_terms; ++l) {
            GridField next = conv.convolve_kernel(term);
            for (std::size_t idx = 0; idx < next.v.size(); ++idx) {
                next.v[idx] *= C;
                acc.v[idx] += next.v[idx];
            }
            term = std::move(next);
        }
    }

    const double defect = first_cell_defect(variant, grid.dt);
    return {std::move(acc), n_terms, defect, defect > 0.02};
}

PicardReport picard_verify(const GridField& a, const KernelVariant& variant,
                           const SpaceTimeGrid& grid, int iters) {
    if (!a.grid.same_shape(grid))
        throw std::invalid_argument("picard_verify: field grid mismatch");
    for (double v : a.v)
        if (!(v >= 0.0)) throw std::invalid_argument("picard_verify: a must be >= 0");

    SpaceTimeConvolver conv(grid);
    GridField j = sample_j(variant.kind, grid);
    conv.set_kernel(j);
    const double C = variant.C;

    GridField f = a;
    bool monotone = true;
    for (int k = 0; k < iters; ++k) {
        GridField jf = conv.convolve_kernel(f);
        GridField next(grid);
        double mx = 0.0;
        for (std::size_t idx = 0; idx < next.v.size(); ++idx) {
            next.v[idx] = a.v[idx] + C * jf.v[idx];
            if (next.v[idx] < f.v[idx] - 1e-12 * (1.0 + std::fabs(f.v[idx]))) monotone = false;
            mx = std::fmax(mx, std::fabs(next.v[idx]));
        }
        if (!(mx < 1e12))
            throw instability_error("picard_verify: iterates exceeded 1e12", k + 1);
        f = std::move(next);
    }

    GridField kcl = sample_resolvent_closed(variant, grid);
    GridField ka = conv.convolve(kcl, a);
    double max_resid = -std::numeric_limits<double>::infinity();
    double max_value = 0.0;
    for (std::size_t idx = 0; idx < f.v.size(); ++idx) {
        const double bound = a.v[idx] + ka.v[idx];
        max_resid = std::fmax(max_resid, f.v[idx] - bound);
        max_value = std::fmax(max_value, f.v[idx]);
    }

    // discretization slack: singular-cell defect amplified through the series,
    // plus the K * defect feedback on the bound side
    const double amax = a.max_abs();
    const double kmass = grid.dt * grid.dx *
                         [&] {
                             double s = 0.0;
                             for (double v : kcl.v) s += v;
                             return s;
                         }();
    const double defect = first_cell_defect(variant, grid.dt);
    const double tol = amax * (4.0 * defect * (1.0 + kmass) + 1e-9) + 1e-12;

    return {iters, monotone, max_value, max_resid, tol};
}

double ScalarGronwall::U_at(double t) const {
    if (U.empty() || t <= 0.0) return 0.0;
    const double pos = t / dt - 0.5; // cell centers
    if (pos <= 0.0) return U.front() * (t / (0.5 * dt)); // linear ramp from U(0) = 0
    const std::size_t n = U.size();
    if (pos >= static_cast<double>(n - 1)) return U.back();
    const std::size_t i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    return U[i] * (1.0 - w) + U[i + 1] * w;
}

double ScalarGronwall::bound(double t) const { return c1 + (c1 + c2) * U_at(t); }

ScalarGronwall gronwall_scalar(double c1, double c2,
                               const std::function<double(double)>& j_time, double T,
                               double dt, double tol_term, int max_terms) {
    if (!(c1 >= 0.0) || !(c2 >= 0.0))
        throw std::invalid_argument("gronwall_scalar: c1, c2 must be >= 0");
    const int nt = static_cast<int>(std::llround(T / dt));
    if (nt < 1 || std::fabs(T / dt - nt) > 1e-9 * nt)
        throw std::invalid_argument("gronwall_scalar: T/dt must be a positive integer");

    std::vector<double> j(nt);
    for (int i = 0; i < nt; ++i) j[i] = j_time((i + 0.5) * dt);

    std::vector<double> term = j;
    std::vector<double> u = j;
    int terms = 1;
    for (int l = 2; l <= max_terms; ++l) {
        std::vector<double> next(nt, 0.0);
        for (int k = 1; k < nt; ++k) {
            double s = 0.0;
            for (int i = 0; i < k; ++i) s += j[i] * term[k - 1 - i];
            next[k] = s * dt;
        }
        double mass = 0.0;
        for (double v : next) mass += std::fabs(v);
        mass *= dt;
        term = std::move(next);
        for (int k = 0; k < nt; ++k) u[k] += term[k];
        ++terms;
        if (mass < tol_term) break;
        if (l == max_terms)
            throw truncation_error("gronwall_scalar: series did not converge", tol_term,
                                   mass, static_cast<std::size_t>(max_terms));
    }

    ScalarGronwall out;
    out.c1 = c1;
    out.c2 = c2;
    out.dt = dt;
    out.terms = terms;
    out.U.resize(nt);
    double acc = 0.0;
    for (int k = 0; k < nt; ++k) {
        acc += u[k] * dt;
        out.U[k] = acc;
    }
    return out;
}

} // namespace heatwave::gronwall
