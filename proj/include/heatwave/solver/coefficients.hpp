#pragma once

// Registry of drift/diffusion coefficient pairs (all globally Lipschitz with
// recorded constants) and of bounded Borel initial conditions. Registry ids
// are the strings the configuration layer uses.

#include <functional>
#include <string>

#include "heatwave/errors.hpp"

namespace heatwave::solver {

struct CoefficientSpec {
    enum class Kind { Zero, Linear, SineSigma, TanhDrift, SineTanh, SqrtGrowth };

    Kind kind;
    std::string id;
    double lipschitz; // recorded C_{sigma,b}
    double growth;    // linear-growth constant

    bool sigma_is_zero() const { return kind == Kind::Zero || kind == Kind::TanhDrift; }
    bool b_is_zero() const {
        return kind == Kind::Zero || kind == Kind::Linear || kind == Kind::SineSigma ||
               kind == Kind::SqrtGrowth;
    }
    bool is_linear_case() const { return kind == Kind::Linear; }

    double sigma(double t, double x, double u) const;
    double b(double t, double x, double u) const;
    void sigma_row(double t, const double* xs, const double* us, double* out, int n) const;
    void b_row(double t, const double* xs, const double* us, double* out, int n) const;

    static CoefficientSpec registry(const std::string& id);
};

struct InitialCondition {
    std::string id;
    std::function<double(double)> fn;
    double sup_norm;
    bool is_zero;
    bool is_constant;
    double constant_value; // meaningful when is_constant

    double operator()(double x) const { return fn(x); }

    // ids: zero | one | const:<v> | bump | step
    static InitialCondition registry(const std::string& id);
    static InitialCondition custom(std::string name, std::function<double(double)> f,
                                   double sup);
};

} // namespace heatwave::solver
