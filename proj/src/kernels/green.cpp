#include "heatwave/kernels/green.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "heatwave/errors.hpp"
#include "heatwave/quad.hpp"
#include "heatwave/simd/dispatch.hpp"

namespace heatwave::kernels {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_point(const GreenEvaluator& ev, double t, double x) {
    if (!(t > 0.0)) throw std::domain_error("green: t must be > 0");
    if (!(std::abs(x) <= ev.L)) throw std::domain_error("green: |x| must be <= L");
}

void check_ys(const GreenEvaluator& ev, const double* ys, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!(std::abs(ys[i]) <= ev.L)) throw std::domain_error("green: |y| must be <= L");
}

// Number of image shells needed so that everything beyond is certified below
// tol. Terms in shell j >= K+1 sit at Gaussian distance >= (4j-4)L, four per
// shell; the remainder is bounded by a term-plus-integral comparison.
int image_shell_count(double t, double L, double tol, int max_terms) {
    double last = 0.0;
    for (int K = 1; K <= max_terms; ++K) {
        const double d = 4.0 * static_cast<double>(K) * L;
        last = 4.0 * (heat_kernel(t, d) + gaussian_tail_exact(d, 2.0 * t) / (4.0 * L));
        if (last < tol) return K;
    }
    throw truncation_error("image series: shell budget exhausted", tol, last,
                           static_cast<std::size_t>(max_terms));
}

// Largest eigenindex needed for the Dirichlet/Neumann series (modes n >= 1,
// envelope e^{-alpha n^2}/L, geometric remainder bound).
int eigen_term_count_dn(double t, double L, double tol, int max_terms) {
    const double alpha = kPi * kPi * t / (4.0 * L * L);
    double last = 0.0;
    for (int N = 1; N <= max_terms; ++N) {
        const double head = std::exp(-alpha * (N + 1.0) * (N + 1.0));
        const double ratio = std::exp(-alpha * (2.0 * N + 3.0));
        last = head / ((1.0 - ratio) * L);
        if (last < tol) return N;
    }
    throw truncation_error("eigen series: term budget exhausted (t too small; use images)",
                           tol, last, static_cast<std::size_t>(max_terms));
}

// Mixed case: odd modes k = 2n+1, n = 0..N; returns N.
int eigen_term_count_m(double t, double L, double tol, int max_terms) {
    const double beta = kPi * kPi * t / (16.0 * L * L);
    double last = 0.0;
    for (int N = 0; N <= max_terms; ++N) {
        const double k_next = 2.0 * N + 3.0;
        const double ratio = std::exp(-4.0 * beta * (k_next + 1.0));
        last = std::exp(-beta * k_next * k_next) / ((1.0 - ratio) * L);
        if (last < tol) return N;
    }
    throw truncation_error("eigen series: term budget exhausted (t too small; use images)",
                           tol, last, static_cast<std::size_t>(max_terms));
}

struct ImageTerm {
    double center; // argument = center -/+ y
    double ysign;  // -1 for the x-y family, +1 for the x+y family
    double sign;   // series sign of the term
};

// Fixed term order: m = 0 core, then shells k = 1..K as
// (x-y, +k), (x-y, -k), (x+y, +k), (x+y, -k). The order is part of the
// contract: single-point and batched evaluation share it bit for bit.
void build_image_terms(BoundaryCondition bc, double x, double L, int K,
                       std::vector<ImageTerm>& terms) {
    terms.clear();
    const double s2 = (bc == BoundaryCondition::Dirichlet) ? -1.0
                      : (bc == BoundaryCondition::Neumann) ? 1.0
                                                           : -1.0; // Mixed at m=0
    terms.push_back({x, -1.0, 1.0});
    terms.push_back({x + 2.0 * L, 1.0, s2});
    for (int k = 1; k <= K; ++k) {
        double f1 = 1.0, f2 = (bc == BoundaryCondition::Dirichlet) ? -1.0 : 1.0;
        if (bc == BoundaryCondition::Mixed) {
            const double par = (k % 2 == 0) ? 1.0 : -1.0; // (-1)^k = (-1)^{-k}
            f1 = par;
            f2 = -par;
        }
        const double kk = static_cast<double>(k);
        terms.push_back({x + 4.0 * kk * L, -1.0, f1});
        terms.push_back({x - 4.0 * kk * L, -1.0, f1});
        terms.push_back({x + (4.0 * kk + 2.0) * L, 1.0, f2});
        terms.push_back({x + (-4.0 * kk + 2.0) * L, 1.0, f2});
    }
}

void images_batch_impl(const GreenEvaluator& ev, double t, double x, const double* ys,
                       double* out, std::size_t n) {
    check_point(ev, t, x);
    check_ys(ev, ys, n);
    const int K = image_shell_count(t, ev.L, ev.series_tol, ev.max_terms);

    thread_local std::vector<ImageTerm> terms;
    build_image_terms(ev.bc, x, ev.L, K, terms);

    const double inv4t = 1.0 / (4.0 * t);
    const double norm = 1.0 / std::sqrt(4.0 * kPi * t);
    const std::size_t T = terms.size();

    thread_local std::vector<double> args, exps;
    args.resize(T * n);
    exps.resize(T * n);
    for (std::size_t ti = 0; ti < T; ++ti) {
        const ImageTerm& tm = terms[ti];
        double* a = args.data() + ti * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = tm.center + tm.ysign * ys[i];
            a[i] = -(d * d) * inv4t;
        }
    }
    simd::active().exp_batch(args.data(), exps.data(), T * n);
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (std::size_t ti = 0; ti < T; ++ti) {
        const double s = terms[ti].sign;
        const double* e = exps.data() + ti * n;
        for (std::size_t i = 0; i < n; ++i) out[i] += s * e[i];
    }
    for (std::size_t i = 0; i < n; ++i) out[i] *= norm;
}

void eigen_batch_impl(const GreenEvaluator& ev, double t, double x, const double* ys,
                      double* out, std::size_t n) {
    check_point(ev, t, x);
    check_ys(ev, ys, n);
    const double L = ev.L;
    const double inv_l = 1.0 / L;

    thread_local std::vector<double> coef_args, coefs, prev, cur;
    prev.resize(n);
    cur.resize(n);

    if (ev.bc == BoundaryCondition::Mixed) {
        const int N = eigen_term_count_m(t, L, ev.series_tol, ev.max_terms);
        const double beta = kPi * kPi * t / (16.0 * L * L);
        coef_args.resize(N + 1);
        coefs.resize(N + 1);
        for (int nn = 0; nn <= N; ++nn) {
            const double k = 2.0 * nn + 1.0;
            coef_args[nn] = -beta * k * k;
        }
        simd::active().exp_batch(coef_args.data(), coefs.data(), N + 1);

        const double phix = kPi * (x + L) / (4.0 * L);
        const double two_c2x = 2.0 * std::cos(2.0 * phix);
        double px_prev = -std::sin(phix); // k = -1
        double px_cur = std::sin(phix);   // k = +1
        for (std::size_t i = 0; i < n; ++i) {
            const double phiy = kPi * (ys[i] + L) / (4.0 * L);
            prev[i] = -std::sin(phiy);
            cur[i] = std::sin(phiy);
            out[i] = 0.0;
        }
        thread_local std::vector<double> c2y;
        c2y.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            c2y[i] = 2.0 * std::cos(2.0 * kPi * (ys[i] + L) / (4.0 * L));
        for (int nn = 0; nn <= N; ++nn) {
            const double w = coefs[nn] * inv_l * px_cur;
            for (std::size_t i = 0; i < n; ++i) out[i] += w * cur[i];
            const double nx = two_c2x * px_cur - px_prev;
            px_prev = px_cur;
            px_cur = nx;
            for (std::size_t i = 0; i < n; ++i) {
                const double nv = c2y[i] * cur[i] - prev[i];
                prev[i] = cur[i];
                cur[i] = nv;
            }
        }
        return;
    }

    const bool neumann = ev.bc == BoundaryCondition::Neumann;
    const int N = eigen_term_count_dn(t, L, ev.series_tol, ev.max_terms);
    const double alpha = kPi * kPi * t / (4.0 * L * L);
    coef_args.resize(N);
    coefs.resize(N);
    for (int nn = 1; nn <= N; ++nn)
        coef_args[nn - 1] = -alpha * static_cast<double>(nn) * static_cast<double>(nn);
    simd::active().exp_batch(coef_args.data(), coefs.data(), N);

    const double thx = kPi * (x + L) / (2.0 * L);
    const double two_cx = 2.0 * std::cos(thx);
    double px_prev, px_cur;
    if (neumann) {
        px_prev = 1.0; // cos(0)
        px_cur = std::cos(thx);
    } else {
        px_prev = 0.0; // sin(0)
        px_cur = std::sin(thx);
    }
    thread_local std::vector<double> two_cy;
    two_cy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double thy = kPi * (ys[i] + L) / (2.0 * L);
        two_cy[i] = 2.0 * std::cos(thy);
        if (neumann) {
            prev[i] = 1.0;
            cur[i] = std::cos(thy);
            out[i] = 0.5 * inv_l;
        } else {
            prev[i] = 0.0;
            cur[i] = std::sin(thy);
            out[i] = 0.0;
        }
    }
    for (int nn = 1; nn <= N; ++nn) {
        const double w = coefs[nn - 1] * inv_l * px_cur;
        for (std::size_t i = 0; i < n; ++i) out[i] += w * cur[i];
        const double nx = two_cx * px_cur - px_prev;
        px_prev = px_cur;
        px_cur = nx;
        for (std::size_t i = 0; i < n; ++i) {
            const double nv = two_cy[i] * cur[i] - prev[i];
            prev[i] = cur[i];
            cur[i] = nv;
        }
    }
}

void heat_kernel_batch(double t, double x, const double* ys, double* out, std::size_t n) {
    thread_local std::vector<double> args;
    args.resize(n);
    const double inv4t = 1.0 / (4.0 * t);
    const double norm = 1.0 / std::sqrt(4.0 * kPi * t);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x - ys[i];
        args[i] = -(d * d) * inv4t;
    }
    simd::active().exp_batch(args.data(), out, n);
    for (std::size_t i = 0; i < n; ++i) out[i] *= norm;
}

// initial panel edges around the kernel peak at y = x (width ~ sqrt(2t))
std::vector<double> peak_splits(double x, double t, double L) {
    const double s = std::sqrt(2.0 * t);
    std::vector<double> v;
    for (double d : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
        const double p = x + d * s;
        if (p > -L && p < L) v.push_back(p);
    }
    return v;
}

} // namespace

const char* to_string(BoundaryCondition bc) {
    switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Mixed: return "mixed";
    case BoundaryCondition::Neumann: return "neumann";
    }
    return "?";
}

GreenEvaluator::GreenEvaluator(double L_, BoundaryCondition bc_, double series_tol_,
                               int max_terms_)
    : L(L_), bc(bc_), series_tol(series_tol_), max_terms(max_terms_) {
    if (!(L > 0.0)) throw std::domain_error("GreenEvaluator: L must be > 0");
    if (!(series_tol > 0.0)) throw std::domain_error("GreenEvaluator: series_tol must be > 0");
    if (max_terms < 1) throw std::domain_error("GreenEvaluator: max_terms must be >= 1");
}

void green_images_batch(const GreenEvaluator& ev, double t, double x, const double* ys,
                        double* out, std::size_t n) {
    images_batch_impl(ev, t, x, ys, out, n);
}

void green_eigen_batch(const GreenEvaluator& ev, double t, double x, const double* ys,
                       double* out, std::size_t n) {
    eigen_batch_impl(ev, t, x, ys, out, n);
}

void green_batch(const GreenEvaluator& ev, double t, double x, const double* ys,
                 double* out, std::size_t n) {
    if (t <= ev.L * ev.L)
        images_batch_impl(ev, t, x, ys, out, n);
    else
        eigen_batch_impl(ev, t, x, ys, out, n);
}

double green_images(const GreenEvaluator& ev, double t, double x, double y) {
    double out;
    green_images_batch(ev, t, x, &y, &out, 1);
    return out;
}

double green_eigen(const GreenEvaluator& ev, double t, double x, double y) {
    double out;
    green_eigen_batch(ev, t, x, &y, &out, 1);
    return out;
}

double green(const GreenEvaluator& ev, double t, double x, double y) {
    double out;
    green_batch(ev, t, x, &y, &out, 1);
    return out;
}

double discrepancy(const GreenEvaluator& ev, double t, double x, double y) {
    return heat_kernel(t, x - y) - green(ev, t, x, y);
}

double green_mass(const GreenEvaluator& ev, double t, double x, double quad_tol) {
    check_point(ev, t, x);
    auto f = [&](const double* ys, double* out, std::size_t n) {
        green_batch(ev, t, x, ys, out, n);
    };
    return quad::integrate(f, -ev.L, ev.L, quad_tol, peak_splits(x, t, ev.L)).value;
}

double discrepancy_l1(const GreenEvaluator& ev, double t, double x, double quad_tol) {
    if (!(std::abs(x) < ev.L)) throw std::domain_error("discrepancy_l1: |x| must be < L");
    check_point(ev, t, x);
    auto f = [&](const double* ys, double* out, std::size_t n) {
        thread_local std::vector<double> hk;
        hk.resize(n);
        green_batch(ev, t, x, ys, out, n);
        heat_kernel_batch(t, x, ys, hk.data(), n);
        for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(hk[i] - out[i]);
    };
    return quad::integrate(f, -ev.L, ev.L, quad_tol, peak_splits(x, t, ev.L)).value;
}

double discrepancy_l2_time(const GreenEvaluator& ev, double t, double x, double quad_tol) {
    if (!(std::abs(x) < ev.L)) throw std::domain_error("discrepancy_l2_time: |x| must be < L");
    check_point(ev, t, x);
    const double inner_tol = quad_tol / (8.0 * t);
    auto outer = [&](double s) -> double {
        if (s <= 0.0) return 0.0;
        auto f = [&](const double* ys, double* out, std::size_t n) {
            thread_local std::vector<double> hk;
            hk.resize(n);
            green_batch(ev, s, x, ys, out, n);
            heat_kernel_batch(s, x, ys, hk.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                const double d = hk[i] - out[i];
                out[i] = d * d;
            }
        };
        return quad::integrate(f, -ev.L, ev.L, inner_tol, peak_splits(x, s, ev.L)).value;
    };
    return quad::integrate_scalar(outer, 0.0, t, 0.5 * quad_tol,
                                  {t / 8.0, t / 4.0, t / 2.0, 3.0 * t / 4.0})
        .value;
}

double semigroup_residual(const GreenEvaluator& ev, double s, double t, double x, double z,
                          double quad_tol) {
    check_point(ev, s, x);
    check_point(ev, t, z);
    auto f = [&](const double* ys, double* out, std::size_t n) {
        thread_local std::vector<double> g2;
        g2.resize(n);
        green_batch(ev, s, x, ys, out, n);
        green_batch(ev, t, z, ys, g2.data(), n); // symmetric in (x, y)
        for (std::size_t i = 0; i < n; ++i) out[i] *= g2[i];
    };
    std::vector<double> splits = peak_splits(x, s, ev.L);
    for (double p : peak_splits(z, t, ev.L)) splits.push_back(p);
    const double conv = quad::integrate(f, -ev.L, ev.L, quad_tol, splits).value;
    return std::abs(conv - green(ev, s + t, x, z));
}

double mixed_from_dirichlet(double L, double t, double x, double y, double series_tol,
                            int max_terms) {
    if (!(std::abs(x) <= L && std::abs(y) <= L))
        throw std::domain_error("mixed_from_dirichlet: |x|,|y| must be <= L");
    GreenEvaluator d2(2.0 * L, BoundaryCondition::Dirichlet, series_tol, max_terms);
    return green(d2, t, x - L, y - L) + green(d2, t, x - L, L - y);
}

double l1_bound(double t, double x, double L) {
    return k_factor(t, x, L) * exp_bracket_4t(t, x, L);
}

double l1_time_bound(double t, double x, double L) { return t * l1_bound(t, x, L); }

double l2_time_bound(BoundaryCondition bc, double t, double x, double L, double L0) {
    const double br = exp_bracket_4t(t, x, L);
    double v = std::sqrt(t / kPi) * k_factor(t, x, L) * br * br;
    if (bc == BoundaryCondition::Neumann) {
        if (!(L0 > 0.0 && L0 <= L))
            throw std::domain_error("l2_time_bound: Neumann needs 0 < L0 <= L");
        v *= theta(4.0 * L0 * L0 / t);
    }
    return v;
}

// The image-family argument splits |H^N| into four series whose exponents
// run over the odd squares (x-y families) and the even squares (x+y
// families); together they cover every square once, so the envelope
// constant is theta(L^2/t). (theta(4L^2/t) covers only the even half and
// is numerically violated near the boundary.)
double neumann_pointwise_bound(double t, double x, double L) {
    return theta(L * L / t) / std::sqrt(4.0 * kPi * t) * exp_bracket_4t(t, x, L);
}

} // namespace heatwave::kernels
