#pragma once

// Discretization carrier for the space-time convolution machinery. Fields
// live on time cells (values at cell centers (i+1/2)dt, so integrable
// 1/sqrt(r) kernels are never sampled at r = 0) and on spatial nodes
// x_j = x_min + j dx.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heatwave::gronwall {

struct SpaceTimeGrid {
    double T;
    double dt;
    double x_min;
    double x_max;
    double dx;

    SpaceTimeGrid(double T_, double dt_, double x_min_, double x_max_, double dx_)
        : T(T_), dt(dt_), x_min(x_min_), x_max(x_max_), dx(dx_) {
        if (!(dt > 0.0) || !(dx > 0.0)) throw std::invalid_argument("grid: dt, dx must be > 0");
        if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
        const double nt_f = T / dt;
        const double nx_f = (x_max - x_min) / dx;
        nt_ = static_cast<int>(std::llround(nt_f));
        nx_cells_ = static_cast<int>(std::llround(nx_f));
        if (nt_ < 1 || std::fabs(nt_f - nt_) > 1e-9 * nt_f)
            throw std::invalid_argument("grid: T/dt must be a positive integer");
        if (nx_cells_ < 1 || std::fabs(nx_f - nx_cells_) > 1e-9 * nx_f)
            throw std::invalid_argument("grid: (x_max-x_min)/dx must be a positive integer");
    }

    int nt() const { return nt_; }
    int nx() const { return nx_cells_ + 1; } // nodes
    double time_center(int i) const { return (i + 0.5) * dt; }
    double x(int j) const { return x_min + j * dx; }
    bool symmetric() const {
        return std::fabs(x_min + x_max) < 1e-12 * (x_max - x_min) && nx() % 2 == 1;
    }
    bool same_shape(const SpaceTimeGrid& o) const {
        return nt_ == o.nt_ && nx_cells_ == o.nx_cells_ && std::fabs(dt - o.dt) < 1e-15 &&
               std::fabs(dx - o.dx) < 1e-15 && std::fabs(x_min - o.x_min) < 1e-12;
    }

private:
    int nt_;
    int nx_cells_;
};

struct GridField {
    SpaceTimeGrid grid;
    std::vector<double> v; // nt x nx, time-major

    explicit GridField(const SpaceTimeGrid& g)
        : grid(g), v(static_cast<std::size_t>(g.nt()) * g.nx(), 0.0) {}

    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * grid.nx() + j]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * grid.nx() + j]; }
    double* row(int i) { return v.data() + static_cast<std::size_t>(i) * grid.nx(); }
    const double* row(int i) const {
        return v.data() + static_cast<std::size_t>(i) * grid.nx();
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::fmax(m, std::fabs(x));
        return m;
    }
};

} // namespace heatwave::gronwall
