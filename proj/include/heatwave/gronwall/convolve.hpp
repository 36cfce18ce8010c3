#pragma once

// Discrete space-time convolution
//   (f * g)[k][a] = dt dx sum_{i+j=k-1} sum_b w_b f[i][a-b+j0] g[j][b]
// (rectangle rule in time on cell centers, trapezoid weights w in space,
// j0 = index of x = 0). Computed through zero-padded 2-D real FFTs, which
// reproduces the direct sums to machine roundoff; the direct reference
// implementation lives in the tests.
//
// On top of it: the resolvent series sum_l C^l J^{*l}, Picard iteration of
// f <- a + C J * f against the closed-form Gronwall bound, and the scalar
// (time-only) Gronwall lemma.

#include <functional>
#include <memory>
#include <vector>

#include "heatwave/gronwall/resolvent.hpp"

namespace heatwave::gronwall {

class SpaceTimeConvolver {
public:
    explicit SpaceTimeConvolver(const SpaceTimeGrid& grid);
    ~SpaceTimeConvolver();
    SpaceTimeConvolver(const SpaceTimeConvolver&) = delete;
    SpaceTimeConvolver& operator=(const SpaceTimeConvolver&) = delete;

    const SpaceTimeGrid& grid() const { return grid_; }

    // f * g on the construction grid (both fields must share it)
    GridField convolve(const GridField& f, const GridField& g);

    // cache the spectrum of a kernel for repeated convolution against it
    void set_kernel(const GridField& j);
    // kernel * g using the cached spectrum
    GridField convolve_kernel(const GridField& g);

private:
    struct Impl;
    SpaceTimeGrid grid_;
    std::unique_ptr<Impl> impl_;
};

// convenience one-shot form
GridField convolve_st(const GridField& f, const GridField& g);

struct ResolventSeries {
    GridField sum;
    int terms;
    // estimated quadrature defect of the first (singular) time cell of J
    double singular_cell_defect;
    bool coarse_grid_warning;
};

// sum_{l=1..n_terms} C^l J^{*l} by repeated convolution
ResolventSeries resolvent_series(const KernelVariant& variant, const SpaceTimeGrid& grid,
                                 int n_terms);

struct PicardReport {
    int iters;
    bool monotone;           // iterates nondecreasing pointwise
    double max_value;        // max of the final iterate
    double max_residual;     // max over grid of f_iters - (a + K_closed * a)
    double tolerance_estimate;
};

// iterate f_{k+1} = a + C (J * f_k) from f_0 = a and compare against the
// closed-form bound a + K * a; throws instability_error past 1e12
PicardReport picard_verify(const GridField& a, const KernelVariant& variant,
                           const SpaceTimeGrid& grid, int iters);

struct ScalarGronwall {
    double c1, c2;
    double dt;
    std::vector<double> U; // U(t) at cell centers
    int terms;

    // c1 + (c1 + c2) U(t), piecewise-linear in t
    double bound(double t) const;
    double U_at(double t) const;
};

// scalar Gronwall: U(t) = int_0^t sum_n J^{*n}, by truncated convolution
// series on a midpoint grid; series truncation below tol_term of mass
ScalarGronwall gronwall_scalar(double c1, double c2,
                               const std::function<double(double)>& j_time, double T,
                               double dt = 1e-3, double tol_term = 1e-8,
                               int max_terms = 400);

} // namespace heatwave::gronwall
