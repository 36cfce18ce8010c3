#pragma once

// Space-time lattice for the finite-difference runs: nodes x_j = -L + j dx
// (2L/dx an integer), steps of dt up to T. The scheme is unconditionally
// stable, but dt <= dx is enforced so the noise term's spatial-correlation
// error stays subdominant.

#include <cmath>
#include <stdexcept>

#include "heatwave/errors.hpp"

namespace heatwave::solver {

struct LatticeSpec {
    double L;
    double dx;
    double T;
    double dt;

    LatticeSpec(double L_, double dx_, double T_, double dt_)
        : L(L_), dx(dx_), T(T_), dt(dt_) {
        if (!(L > 0.0) || !(dx > 0.0) || !(T > 0.0) || !(dt > 0.0))
            throw config_error("lattice: L, dx, T, dt must all be > 0");
        const double m = 2.0 * L / dx;
        m_ = static_cast<long>(std::llround(m));
        if (m_ < 2 || std::fabs(m - static_cast<double>(m_)) > 1e-9 * m)
            throw config_error("lattice: 2L/dx must be an integer >= 2");
        const double ns = T / dt;
        steps_ = static_cast<long>(std::llround(ns));
        if (steps_ < 1 || std::fabs(ns - static_cast<double>(steps_)) > 1e-9 * ns)
            throw config_error("lattice: T/dt must be a positive integer");
        if (dt > dx * (1.0 + 1e-12))
            throw config_error("lattice: dt <= dx required for noise accuracy");
        if (m_ > (1L << 31) - 2 || steps_ > (1L << 31) - 2)
            throw config_error("lattice: index space too large");
    }

    int n_nodes() const { return static_cast<int>(m_) + 1; }
    int n_steps() const { return static_cast<int>(steps_); }
    double x(int j) const { return -L + j * dx; }

    // nearest step index of a time, or -1 if t is not on the step grid
    int step_of(double t) const {
        const long k = std::lround(t / dt);
        if (k < 0 || k > steps_) return -1;
        if (std::fabs(t - static_cast<double>(k) * dt) > 1e-6 * dt) return -1;
        return static_cast<int>(k);
    }

    // node index of a position, or -1 if x is not on the node grid
    int node_of(double xq) const {
        const long j = std::lround((xq + L) / dx);
        if (j < 0 || j > m_) return -1;
        if (std::fabs(xq - x(static_cast<int>(j))) > 1e-6 * dx) return -1;
        return static_cast<int>(j);
    }

private:
    long m_;
    long steps_;
};

} // namespace heatwave::solver
