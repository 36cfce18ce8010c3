#include "heatwave/solver/solve.hpp"

#include <algorithm>
#include <cmath>

#include "heatwave/parallel.hpp"
#include "heatwave/quad.hpp"

namespace heatwave::solver {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Constant-coefficient tridiagonal factorization of I - dt D_h.
struct ThomasSolver {
    std::vector<double> sub, cp, inv_denom;
    int n;

    ThomasSolver(BoundaryCondition bc, const LatticeSpec& lat) {
        n = lat.n_nodes();
        const double r = lat.dt / (lat.dx * lat.dx);
        std::vector<double> diag(n, 1.0 + 2.0 * r), upper(n - 1, -r);
        sub.assign(n - 1, -r);

        const bool left_dirichlet = bc != BoundaryCondition::Neumann;
        const bool right_dirichlet = bc == BoundaryCondition::Dirichlet;
        if (left_dirichlet) {
            diag[0] = 1.0;
            upper[0] = 0.0;
        } else {
            upper[0] = -2.0 * r; // mirrored ghost at -L
        }
        if (right_dirichlet) {
            diag[n - 1] = 1.0;
            sub[n - 2] = 0.0;
        } else {
            sub[n - 2] = -2.0 * r; // mirrored ghost at +L
        }

        // diagonally dominant (1 + 2r > 2r), so the elimination cannot break
        cp.resize(n - 1);
        inv_denom.resize(n);
        inv_denom[0] = 1.0 / diag[0];
        cp[0] = upper[0] * inv_denom[0];
        for (int j = 1; j < n; ++j) {
            inv_denom[j] = 1.0 / (diag[j] - sub[j - 1] * cp[j - 1]);
            if (j < n - 1) cp[j] = upper[j] * inv_denom[j];
        }
    }

    void solve_in_place(std::vector<double>& rhs) const {
        rhs[0] *= inv_denom[0];
        for (int j = 1; j < n; ++j) rhs[j] = (rhs[j] - sub[j - 1] * rhs[j - 1]) * inv_denom[j];
        for (int j = n - 2; j >= 0; --j) rhs[j] -= cp[j] * rhs[j + 1];
    }
};

} // namespace

const std::vector<double>& SolutionField::at_time(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::fabs(times[i] - t) <= 1e-9 * (1.0 + std::fabs(t))) return values[i];
    throw config_error("SolutionField: no snapshot at requested time");
}

double SolutionField::at(double t, double x) const {
    const auto& row = at_time(t);
    const int j = lattice.node_of(x);
    if (j < 0) throw config_error("SolutionField: x not on the lattice");
    return row[static_cast<std::size_t>(j)];
}

SolutionField solve(BoundaryCondition bc, const LatticeSpec& lattice,
                    const CoefficientSpec& coeffs, const InitialCondition& u0,
                    const NoiseField& noise, const std::vector<double>& snapshot_times) {
    if (std::fabs(noise.L() - lattice.L) > 1e-9 || std::fabs(noise.dx() - lattice.dx) > 1e-15 ||
        std::fabs(noise.dt() - lattice.dt) > 1e-15)
        throw config_error("solve: noise lattice does not match");
    if (noise.T() < lattice.T - 1e-12) throw config_error("solve: noise horizon too short");

    const int n = lattice.n_nodes();
    const int steps = lattice.n_steps();

    // map snapshot times to step indices
    std::vector<int> snap_steps(snapshot_times.size());
    for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
        const int s = lattice.step_of(snapshot_times[k]);
        if (s < 0) throw config_error("solve: snapshot time not on the step grid");
        snap_steps[k] = s;
    }

    SolutionField out{lattice, bc, {}, {}, 0.0};
    out.times = snapshot_times;
    out.values.resize(snapshot_times.size());

    std::vector<double> u(n), xs(n), xi(n), sig(n), drift(n);
    for (int j = 0; j < n; ++j) {
        xs[j] = lattice.x(j);
        u[j] = u0(xs[j]);
    }
    auto snapshot_if_due = [&](int step) {
        for (std::size_t k = 0; k < snap_steps.size(); ++k)
            if (snap_steps[k] == step) out.values[k] = u;
    };
    snapshot_if_due(0);

    ThomasSolver thomas(bc, lattice);
    const bool left_pin = bc != BoundaryCondition::Neumann;
    const bool right_pin = bc == BoundaryCondition::Dirichlet;
    const double noise_scale = std::sqrt(lattice.dt / lattice.dx);
    const bool use_noise = !coeffs.sigma_is_zero();
    const bool use_drift = !coeffs.b_is_zero();

    for (int i = 0; i < steps; ++i) {
        const double t = i * lattice.dt;
        // sigma and b both see u^i
        if (use_noise) {
            noise.fill_row(i, 0, xi.data(), n);
            coeffs.sigma_row(t, xs.data(), u.data(), sig.data(), n);
        }
        if (use_drift) coeffs.b_row(t, xs.data(), u.data(), drift.data(), n);
        if (use_noise)
            for (int j = 0; j < n; ++j) u[j] += noise_scale * sig[j] * xi[j];
        if (use_drift)
            for (int j = 0; j < n; ++j) u[j] += lattice.dt * drift[j];
        if (left_pin) u[0] = 0.0;
        if (right_pin) u[n - 1] = 0.0;
        thomas.solve_in_place(u);

        double amax = 0.0;
        for (int j = 0; j < n; ++j) amax = std::fmax(amax, std::fabs(u[j]));
        if (!std::isfinite(amax) || amax > 1e12)
            throw instability_error("solve: non-finite or runaway solution", i + 1);
        snapshot_if_due(i + 1);
    }
    return out;
}

SolutionField solve_line_proxy(const LatticeSpec& master, double L_target,
                               const CoefficientSpec& coeffs, const InitialCondition& u0,
                               const NoiseField& noise,
                               const std::vector<double>& snapshot_times) {
    const double margin = 6.0 * std::sqrt(master.T);
    if (master.L < L_target + margin - 1e-9)
        throw config_error("solve_line_proxy: margin rule L_master >= L_target + 6 sqrt(T) violated");
    SolutionField f = solve(BoundaryCondition::Neumann, master, coeffs, u0, noise,
                            snapshot_times);
    f.proxy_error_bound = kernels::rate_factor_aL(master.T, L_target, master.L);
    return f;
}

double linear_variance_exact(BoundaryCondition bc, double L, double t, double x,
                             const InitialCondition& u0, double quad_tol) {
    if (!(u0.is_constant))
        throw config_error("linear_variance_exact: u0 must be zero or constant");
    kernels::GreenEvaluator ev(L, bc);
    double m = 0.0;
    if (!u0.is_zero)
        m = u0.constant_value * (1.0 - kernels::green_mass(ev, t, x, quad_tol * 1e-2));

    const double h2 = kernels::discrepancy_l2_time(ev, t, x, quad_tol);

    // int_0^t int_{|y|>L} Gamma^2(r, x-y) dy dr, r = w^2 flattens the
    // sqrt singularity of the Gamma^2 mass
    auto integrand = [&](double w) {
        const double r = w * w;
        if (r <= 0.0) return 0.0;
        const double tails = kernels::gaussian_tail_exact(L - x, r) +
                             kernels::gaussian_tail_exact(L + x, r);
        return 2.0 * tails / std::sqrt(8.0 * kPi);
    };
    const double g2 =
        quad::integrate_scalar(integrand, 0.0, std::sqrt(t), quad_tol).value;

    return m * m + h2 + g2;
}

namespace {

struct CellStats {
    double mean = 0.0;
    double se = 0.0;
};

// jackknife standard error of mean(v)^{1/p}
CellStats reduce_cell(const std::vector<double>& v, double p) {
    const std::size_t n = v.size();
    CellStats out;
    if (n == 0) return out;
    double sum = 0.0;
    for (double x : v) sum += x;
    const double m = sum / static_cast<double>(n);
    out.mean = (m > 0.0) ? std::pow(m, 1.0 / p) : 0.0;
    if (n < 2 || m <= 0.0) return out;
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mi = (sum - v[i]) / static_cast<double>(n - 1);
        loo[i] = (mi > 0.0) ? std::pow(mi, 1.0 / p) : 0.0;
        loo_mean += loo[i];
    }
    loo_mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (loo[i] - loo_mean) * (loo[i] - loo_mean);
    out.se = std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
    return out;
}

} // namespace

McResult mc_lp_error(const McConfig& config) {
    if (!(config.p >= 1.0)) throw config_error("mc_lp_error: p must be >= 1");
    if (config.n_reps < 2) throw config_error("mc_lp_error: n_reps must be >= 2");
    if (config.L_values.empty() || config.t_values.empty() || config.x_values.empty())
        throw config_error("mc_lp_error: empty sweep axes");

    const LatticeSpec& master = config.master;
    double l_max = 0.0;
    for (double L : config.L_values) l_max = std::fmax(l_max, L);
    if (master.L < l_max + 6.0 * std::sqrt(master.T) - 1e-9)
        throw config_error("mc_lp_error: master lattice violates the margin rule");

    // validate sub-lattices and cell coordinates up front
    std::vector<LatticeSpec> lattices;
    for (double L : config.L_values) {
        lattices.emplace_back(L, master.dx, master.T, master.dt);
        for (double x : config.x_values)
            if (lattices.back().node_of(x) < 0)
                throw config_error("mc_lp_error: x is not a node of the L-lattice");
    }
    for (double t : config.t_values)
        if (master.step_of(t) < 0) throw config_error("mc_lp_error: t not on the step grid");

    const std::size_t n_cells =
        config.L_values.size() * config.t_values.size() * config.x_values.size();
    const int n_reps = config.n_reps;

    // per-replicate |u - u_L|^p, written into private slots
    std::vector<std::vector<double>> slots(static_cast<std::size_t>(n_reps));
    std::vector<char> flagged(static_cast<std::size_t>(n_reps), 0);

    parallel_for(n_reps, config.threads, [&](int rep) {
        try {
            NoiseField noise(config.base_seed, static_cast<std::uint32_t>(rep), master.L,
                             master.dx, master.dt, master.T);
            SolutionField proxy = solve_line_proxy(master, l_max, config.coeffs, config.u0,
                                                   noise, config.t_values);
            std::vector<double>& mine = slots[static_cast<std::size_t>(rep)];
            mine.resize(n_cells);
            std::size_t cell = 0;
            for (std::size_t li = 0; li < config.L_values.size(); ++li) {
                SolutionField ul = solve(config.bc, lattices[li], config.coeffs, config.u0,
                                         noise.restrict_to(config.L_values[li]),
                                         config.t_values);
                for (double t : config.t_values)
                    for (double x : config.x_values) {
                        const double d = std::fabs(proxy.at(t, x) - ul.at(t, x));
                        mine[cell++] = std::pow(d, config.p);
                    }
            }
        } catch (const instability_error&) {
            flagged[static_cast<std::size_t>(rep)] = 1;
        }
    });

    int n_flagged = 0;
    for (char f : flagged) n_flagged += f;
    if (n_flagged > 0 && 100 * n_flagged > n_reps)
        throw instability_error("mc_lp_error: more than 1% of replicates blew up",
                                static_cast<std::size_t>(n_flagged));

    McResult result;
    result.flagged_replicates = n_flagged;
    std::vector<double> cell_values;
    cell_values.reserve(static_cast<std::size_t>(n_reps));

    std::size_t cell = 0;
    for (std::size_t li = 0; li < config.L_values.size(); ++li) {
        const double L = config.L_values[li];
        for (double t : config.t_values)
            for (double x : config.x_values) {
                cell_values.clear();
                for (int rep = 0; rep < n_reps; ++rep)
                    if (!flagged[static_cast<std::size_t>(rep)])
                        cell_values.push_back(slots[static_cast<std::size_t>(rep)][cell]);
                const CellStats st = reduce_cell(cell_values, config.p);

                LocalizationRecord rec;
                rec.bc = kernels::to_string(config.bc);
                rec.L = L;
                rec.t = t;
                rec.x = x;
                rec.p = config.p;
                rec.error_estimate = st.mean;
                rec.std_error = st.se;
                rec.bound_aL = kernels::rate_factor_aL(t, x, L);
                rec.n_effective = static_cast<long>(cell_values.size());
                rec.seed = config.base_seed;
                if (config.coeffs.is_linear_case() && config.u0.is_constant &&
                    config.p == 2.0) {
                    rec.exact_variance =
                        linear_variance_exact(config.bc, L, t, x, config.u0);
                    rec.has_exact = true;
                }
                result.records.push_back(std::move(rec));
                ++cell;
            }
    }
    return result;
}

} // namespace heatwave::solver
