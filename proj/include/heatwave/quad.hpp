#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature with absolute-tolerance
// bisection. Integrands are batch functors (15 abscissae per panel) so the
// exp-heavy kernel evaluations underneath can run vectorized.

#include <functional>
#include <vector>

#include "heatwave/errors.hpp"

namespace heatwave::quad {

// f(xs, out, n): write f(xs[k]) into out[k] for k < n
using BatchFn = std::function<void(const double*, double*, std::size_t)>;

struct Result {
    double value = 0.0;
    double error_estimate = 0.0; // accumulated |K15-G7| over accepted panels
    int panels = 0;
};

// Integrate f over [a, b] to absolute tolerance abs_tol. Optional interior
// break points seed the initial panel list (peaked integrands). Throws
// quadrature_error when the panel budget runs out.
Result integrate(const BatchFn& f, double a, double b, double abs_tol,
                 const std::vector<double>& break_points = {}, int max_panels = 4000);

// Scalar-integrand convenience wrapper.
Result integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, const std::vector<double>& break_points = {},
                        int max_panels = 4000);

} // namespace heatwave::quad
