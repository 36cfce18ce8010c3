#include "heatwave/solver/coefficients.hpp"

#include <cmath>

namespace heatwave::solver {

double CoefficientSpec::sigma(double, double, double u) const {
    switch (kind) {
    case Kind::Zero:
    case Kind::TanhDrift: return 0.0;
    case Kind::Linear: return 1.0;
    case Kind::SineSigma:
    case Kind::SineTanh: return 1.0 + 0.5 * std::sin(u);
    case Kind::SqrtGrowth: return std::sqrt(1.0 + u * u);
    }
    return 0.0;
}

double CoefficientSpec::b(double, double, double u) const {
    switch (kind) {
    case Kind::TanhDrift:
    case Kind::SineTanh: return 0.5 * std::tanh(u);
    default: return 0.0;
    }
}

void CoefficientSpec::sigma_row(double, const double*, const double* us, double* out,
                                int n) const {
    switch (kind) {
    case Kind::Zero:
    case Kind::TanhDrift:
        for (int i = 0; i < n; ++i) out[i] = 0.0;
        break;
    case Kind::Linear:
        for (int i = 0; i < n; ++i) out[i] = 1.0;
        break;
    case Kind::SineSigma:
    case Kind::SineTanh:
        for (int i = 0; i < n; ++i) out[i] = 1.0 + 0.5 * std::sin(us[i]);
        break;
    case Kind::SqrtGrowth:
        for (int i = 0; i < n; ++i) out[i] = std::sqrt(1.0 + us[i] * us[i]);
        break;
    }
}

void CoefficientSpec::b_row(double, const double*, const double* us, double* out,
                            int n) const {
    switch (kind) {
    case Kind::TanhDrift:
    case Kind::SineTanh:
        for (int i = 0; i < n; ++i) out[i] = 0.5 * std::tanh(us[i]);
        break;
    default:
        for (int i = 0; i < n; ++i) out[i] = 0.0;
        break;
    }
}

CoefficientSpec CoefficientSpec::registry(const std::string& id) {
    if (id == "zero") return {Kind::Zero, id, 0.0, 0.0};
    if (id == "linear") return {Kind::Linear, id, 0.0, 1.0};
    if (id == "sine_sigma") return {Kind::SineSigma, id, 0.5, 1.5};
    if (id == "tanh_drift") return {Kind::TanhDrift, id, 0.5, 0.5};
    if (id == "sine_tanh") return {Kind::SineTanh, id, 1.0, 2.0};
    if (id == "sqrt_growth") return {Kind::SqrtGrowth, id, 1.0, 1.0};
    throw config_error("unknown coefficient registry id: " + id);
}

InitialCondition InitialCondition::registry(const std::string& id) {
    if (id == "zero")
        return {id, [](double) { return 0.0; }, 0.0, true, true, 0.0};
    if (id == "one")
        return {id, [](double) { return 1.0; }, 1.0, false, true, 1.0};
    if (id.rfind("const:", 0) == 0) {
        const double v = std::stod(id.substr(6));
        return {id, [v](double) { return v; }, std::fabs(v), v == 0.0, true, v};
    }
    if (id == "bump") {
        // Gaussian bump, width 1/2, amplitude 1
        return {id, [](double x) { return std::exp(-x * x / 0.5); }, 1.0, false, false, 0.0};
    }
    if (id == "step") {
        // smoothed indicator of the right half-line
        return {id, [](double x) { return 0.5 * (1.0 + std::tanh(x / 0.25)); }, 1.0, false,
                false, 0.0};
    }
    throw config_error("unknown initial-condition id: " + id);
}

InitialCondition InitialCondition::custom(std::string name, std::function<double(double)> f,
                                          double sup) {
    return {std::move(name), std::move(f), sup, false, false, 0.0};
}

} // namespace heatwave::solver
