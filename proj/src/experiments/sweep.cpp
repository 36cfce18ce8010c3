#include "heatwave/experiments/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "heatwave/parallel.hpp"
#include "heatwave/quad.hpp"

namespace heatwave::experiments {

std::vector<LocalizationRecord> sweep(const SweepConfig& config) {
    if (config.L_values.empty() || config.t_values.empty() || config.x_values.empty())
        throw config_error("sweep: empty axes");
    if (!std::is_sorted(config.L_values.begin(), config.L_values.end()))
        throw config_error("sweep: L values must be ascending");

    const double T = *std::max_element(config.t_values.begin(), config.t_values.end());
    const double l_max = config.L_values.back();

    auto coeffs = solver::CoefficientSpec::registry(config.coeffs_id);
    auto u0 = solver::InitialCondition::registry(config.u0_id);

    if (config.n_reps == 0) {
        // quadrature path: exact Gaussian variance, linear case only
        if (!coeffs.is_linear_case() || !u0.is_constant || config.p != 2.0)
            throw config_error(
                "sweep: the quadrature path needs the linear registry entry, a "
                "zero/constant u0 and p = 2");
        std::vector<LocalizationRecord> records(config.L_values.size() *
                                                config.t_values.size() *
                                                config.x_values.size());
        std::size_t cell = 0;
        for (double L : config.L_values)
            for (double t : config.t_values)
                for (double x : config.x_values) {
                    LocalizationRecord& rec = records[cell++];
                    rec.bc = kernels::to_string(config.bc);
                    rec.L = L;
                    rec.t = t;
                    rec.x = x;
                    rec.p = 2.0;
                    rec.exact_variance =
                        solver::linear_variance_exact(config.bc, L, t, x, u0);
                    rec.has_exact = true;
                    rec.error_estimate = std::sqrt(rec.exact_variance);
                    rec.std_error = 0.0;
                    rec.bound_aL = kernels::rate_factor_aL(t, x, L);
                    rec.n_effective = 0;
                    rec.seed = config.base_seed;
                }
        return records;
    }

    if (config.n_reps < 100)
        throw config_error("sweep: Monte Carlo sweeps need n_reps >= 100");

    double l_master = config.L_master;
    if (l_master == 0.0) {
        const double need = l_max + 6.0 * std::sqrt(T);
        l_master = std::ceil(need / config.dx - 1e-12) * config.dx;
    }
    if (l_master < l_max + 6.0 * std::sqrt(T) - 1e-9)
        throw config_error("sweep: L_master violates the margin rule");

    solver::McConfig mc{config.bc,
                        config.L_values,
                        config.t_values,
                        config.x_values,
                        config.p,
                        config.n_reps,
                        config.base_seed,
                        solver::LatticeSpec(l_master, config.dx, T, config.dt),
                        coeffs,
                        u0,
                        config.threads};
    return solver::mc_lp_error(mc).records;
}

RateFit fit_rate(const std::vector<LocalizationRecord>& records, RateFit::Regime regime) {
    if (records.empty()) throw config_error("fit_rate: no records");
    const double t = records.front().t;
    const double x = records.front().x;
    for (const auto& r : records) {
        if (std::fabs(r.t - t) > 1e-12 || std::fabs(r.x - x) > 1e-12)
            throw config_error("fit_rate: records must share (t, x)");
        if (!(r.error_estimate > 0.0))
            throw config_error("fit_rate: errors must be positive");
    }

    std::vector<double> xs, ys;
    for (const auto& r : records) {
        const double gap = r.L - std::fabs(x);
        if (gap * gap / (8.0 * t) < 2.0) continue; // below the asymptotic window
        xs.push_back(r.L * r.L);
        ys.push_back(std::log(r.error_estimate));
    }
    if (xs.size() < 4)
        throw config_error("fit_rate: fewer than 4 records in the fit window");

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    RateFit fit;
    fit.regime = regime;
    fit.n_points = static_cast<int>(xs.size());
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.theoretical_slope =
        (regime == RateFit::Regime::Sharp4t) ? -1.0 / (4.0 * t) : -1.0 / (8.0 * t);
    return fit;
}

EnvelopeFit fit_envelope_constant(const std::vector<LocalizationRecord>& records,
                                  double u0_sup_norm) {
    if (records.empty()) throw config_error("fit_envelope_constant: no records");
    EnvelopeFit fit;
    const double denom0 = 1.0 + u0_sup_norm;

    struct Cell {
        double L, ratio, rel_se;
    };
    // group by (t, x)
    std::vector<std::pair<std::pair<double, double>, std::vector<Cell>>> groups;
    for (const auto& r : records) {
        if (!(r.bound_aL > 0.0)) throw config_error("fit_envelope_constant: bound_aL <= 0");
        const double ratio = r.error_estimate / (denom0 * r.bound_aL);
        fit.fitted_c = std::fmax(fit.fitted_c, ratio);
        const double rel_se =
            r.error_estimate > 0 ? r.std_error / r.error_estimate : 0.0;
        auto key = std::make_pair(r.t, r.x);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, {}});
            it = groups.end() - 1;
        }
        it->second.push_back({r.L, ratio, rel_se});
    }

    fit.worst_trend_ratio = 0.0;
    fit.worst_trend_threshold = 1.0;
    for (auto& [key, cells] : groups) {
        (void)key;
        if (cells.size() < 3) continue;
        std::sort(cells.begin(), cells.end(),
                  [](const Cell& a, const Cell& b) { return a.L < b.L; });
        const Cell& first = cells[cells.size() - 3];
        const Cell& last = cells.back();
        if (first.ratio <= 0.0) continue; // degenerate (zero error)
        const double ratio = last.ratio / first.ratio;
        const double rel =
            std::sqrt(first.rel_se * first.rel_se + last.rel_se * last.rel_se);
        const double threshold = 1.0 + 3.0 * rel + 1e-12;
        if (ratio > fit.worst_trend_ratio) {
            fit.worst_trend_ratio = ratio;
            fit.worst_trend_threshold = threshold;
        }
        if (ratio > threshold) fit.trend_ok = false;
    }
    return fit;
}

SmallLReport neumann_small_l_check(double t, double L, double quad_tol) {
    if (!(t > 0.0) || !(L > 0.0))
        throw config_error("neumann_small_l_check: t, L must be > 0");
    kernels::GreenEvaluator ev(L, kernels::BoundaryCondition::Neumann);
    // substitute t - s = w^2 to flatten the sqrt singularity of the kernel
    auto integrand = [&](double w) {
        const double tau = 2.0 * w * w;
        if (tau <= 0.0) return 0.0;
        return 2.0 * w * kernels::green(ev, tau, 0.0, 0.0);
    };
    SmallLReport rep;
    rep.t = t;
    rep.L = L;
    rep.second_moment =
        quad::integrate_scalar(integrand, 0.0, std::sqrt(t), quad_tol).value;
    rep.lower_bound = t / (2.0 * L);
    rep.passed = rep.second_moment >= rep.lower_bound;
    return rep;
}

} // namespace heatwave::experiments
