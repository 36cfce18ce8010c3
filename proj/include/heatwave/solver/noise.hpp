#pragma once

// Discrete space-time white noise on a master lattice. The deviate of cell
// (step i, node j) is a pure function of (seed, replicate, i, global node
// index), generated by Philox; the increment of W over a cell is
// xi * sqrt(dt dx). Cells are indexed by the node that owns them (the dual
// cell centered on the node), so restricting to an aligned centered
// subinterval is just an index offset and shared cells are bit-identical —
// the coupling contract for runs driven by the same noise.

#include <cstdint>

#include "heatwave/solver/lattice.hpp"

namespace heatwave::solver {

class NoiseField {
public:
    NoiseField(std::uint64_t seed, std::uint32_t replicate, double L_master, double dx,
               double dt, double T);

    // centered aligned sub-lattice view; shared cells carry identical deviates
    NoiseField restrict_to(double L_sub) const;

    // standard-normal deviate of cell (step, local node j)
    double xi(int step, int j) const;
    // deviates for local nodes j0 .. j0+n-1 of one step (vectorized)
    void fill_row(int step, int j0, double* out, int n) const;

    double increment_scale() const; // sqrt(dt dx)

    std::uint64_t seed() const { return seed_; }
    std::uint32_t replicate() const { return replicate_; }
    double L() const { return L_; }
    double dx() const { return dx_; }
    double dt() const { return dt_; }
    double T() const { return T_; }
    int n_nodes() const { return n_nodes_; }

private:
    std::uint64_t seed_;
    std::uint32_t replicate_;
    double L_master_;
    double L_; // half-length of this view
    double dx_;
    double dt_;
    double T_;
    int offset_; // master node index of local node 0
    int n_nodes_;
};

NoiseField make_noise(std::uint64_t seed, double L_master, double dx, double dt, double T);

} // namespace heatwave::solver
