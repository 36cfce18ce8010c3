#pragma once

// The three one-step kernels J that drive the error feedback, and the closed
// forms of their geometric convolution series K = sum_l C^l J^{*l}.

#include <functional>

#include "heatwave/gronwall/grid.hpp"

namespace heatwave::gronwall {

enum class VariantKind { Stochastic, NoDrift, Deterministic };

const char* to_string(VariantKind k);

struct KernelVariant {
    VariantKind kind;
    double C; // feedback constant, >= 0

    KernelVariant(VariantKind k, double c);
};

// one-step kernel J(r, z); r <= 0 is a domain error
double j_kernel(VariantKind kind, double r, double z);

// closed-form resolvent K(t, x); t <= 0 is a domain error, C = 0 gives 0
double resolvent_closed(const KernelVariant& variant, double t, double x);

// time prefactor of the closed form (K(t,x) = prefactor(t) * Gamma of the
// variant's spatial profile); exposed for the total-mass cross-check
double resolvent_prefactor(const KernelVariant& variant, double t);

// grid samplers (midpoint in time, nodes in space)
GridField sample_field(const SpaceTimeGrid& grid,
                       const std::function<double(double, double)>& f);
GridField sample_j(VariantKind kind, const SpaceTimeGrid& grid);
GridField sample_resolvent_closed(const KernelVariant& variant, const SpaceTimeGrid& grid);

} // namespace heatwave::gronwall
