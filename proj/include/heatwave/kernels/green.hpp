#pragma once

// Green's functions of the heat equation on [-L, L] under Dirichlet, Mixed
// (Dirichlet at -L, Neumann at +L) and Neumann boundary conditions, evaluated
// through both classical representations:
//   - the method-of-images series (fast for t <= L^2),
//   - the eigenfunction series (fast for t >= L^2),
// each truncated with a certified remainder bound. On top of them: the
// discrepancy against the whole-line kernel, its L1/L2 integrals, masses and
// the semigroup residual. Everything here is pure and thread-safe.

#include <cstddef>

#include "heatwave/kernels/heat.hpp"

namespace heatwave::kernels {

enum class BoundaryCondition { Dirichlet, Mixed, Neumann };

const char* to_string(BoundaryCondition bc);

struct GreenEvaluator {
    double L;
    BoundaryCondition bc;
    double series_tol;
    int max_terms;

    explicit GreenEvaluator(double L, BoundaryCondition bc, double series_tol = 1e-12,
                            int max_terms = 512);
};

// ----- point evaluation ------------------------------------------------

double green_images(const GreenEvaluator& ev, double t, double x, double y);
double green_eigen(const GreenEvaluator& ev, double t, double x, double y);
// regime dispatcher: images for t <= L^2, eigenfunctions otherwise
double green(const GreenEvaluator& ev, double t, double x, double y);
// Gamma(t, x-y) - Gamma_L(t; x, y)
double discrepancy(const GreenEvaluator& ev, double t, double x, double y);

// batched-in-y variants (identical values, vectorized inner loops)
void green_images_batch(const GreenEvaluator& ev, double t, double x, const double* ys,
                        double* out, std::size_t n);
void green_eigen_batch(const GreenEvaluator& ev, double t, double x, const double* ys,
                       double* out, std::size_t n);
void green_batch(const GreenEvaluator& ev, double t, double x, const double* ys,
                 double* out, std::size_t n);

// ----- integrated quantities -------------------------------------------

// int_{-L}^{L} Gamma_L(t; x, y) dy
double green_mass(const GreenEvaluator& ev, double t, double x, double quad_tol = 1e-10);

// int_{-L}^{L} |H_L(t; x, y)| dy
double discrepancy_l1(const GreenEvaluator& ev, double t, double x,
                      double quad_tol = 1e-10);

// int_0^t ds int_{-L}^{L} |H_L(s; x, y)| dy
double discrepancy_l1_time(const GreenEvaluator& ev, double t, double x,
                           double quad_tol = 1e-8);

// int_0^t ds int_{-L}^{L} H_L(s; x, y)^2 dy
double discrepancy_l2_time(const GreenEvaluator& ev, double t, double x,
                           double quad_tol = 1e-8);

// | int Gamma_L(s;x,y) Gamma_L(t;y,z) dy - Gamma_L(s+t;x,z) |
double semigroup_residual(const GreenEvaluator& ev, double s, double t, double x,
                          double z, double quad_tol = 1e-10);

// Mixed Green's function assembled from the Dirichlet one on [-2L, 2L]
double mixed_from_dirichlet(double L, double t, double x, double y,
                            double series_tol = 1e-12, int max_terms = 512);

// ----- bound right-hand sides (the quantities the estimates compare to) --

// K_{t,x,L} [exp(-(L-x)^2/4t) + exp(-(L+x)^2/4t)]
double l1_bound(double t, double x, double L);
// t K_{t,x,L} [ ... ]
double l1_time_bound(double t, double x, double L);
// sqrt(t/pi) K_{t,x,L} [ ... ]^2, with a theta(4 L0^2/t) factor for Neumann
double l2_time_bound(BoundaryCondition bc, double t, double x, double L, double L0);
// pointwise Neumann bound: theta(4L^2/t)/sqrt(4 pi t) [ ... ]
double neumann_pointwise_bound(double t, double x, double L);

} // namespace heatwave::kernels
