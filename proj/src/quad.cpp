#include "heatwave/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace heatwave::quad {

namespace {

// QUADPACK dqk15 abscissae/weights on [-1, 1]
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
    long seq; // creation order, deterministic tie-break
};

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.seq > q.seq;
    }
};

void gk15(const BatchFn& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double xs[15];
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        xs[2 * i] = c - h * kXgk[i];
        xs[2 * i + 1] = c + h * kXgk[i];
    }
    xs[14] = c;
    f(xs, fv, 15);

    double resk = kWgk[7] * fv[14];
    double resg = kWg[3] * fv[14];
    for (int i = 0; i < 7; ++i) {
        const double sum = fv[2 * i] + fv[2 * i + 1];
        resk += kWgk[i] * sum;
        if (i % 2 == 1) resg += kWg[i / 2] * sum;
    }
    value = resk * h;
    err = std::abs((resk - resg) * h);
}

} // namespace

Result integrate(const BatchFn& f, double a, double b, double abs_tol,
                 const std::vector<double>& break_points, int max_panels) {
    if (!(b > a)) return {0.0, 0.0, 0};

    std::vector<double> edges;
    edges.push_back(a);
    for (double p : break_points)
        if (p > a && p < b) edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    long seq = 0;
    double total = 0.0, total_err = 0.0;
    int n_panels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p{edges[i], edges[i + 1], 0.0, 0.0, seq++};
        gk15(f, p.a, p.b, p.value, p.err);
        total += p.value;
        total_err += p.err;
        heap.push(p);
        ++n_panels;
    }

    while (total_err > abs_tol && !heap.empty()) {
        if (n_panels >= max_panels)
            throw quadrature_error("adaptive quadrature panel budget exhausted", abs_tol,
                                   total_err);
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at rounding resolution; accept as is
            continue;
        }
        total -= worst.value;
        total_err -= worst.err;
        for (int half = 0; half < 2; ++half) {
            Panel p{half == 0 ? worst.a : mid, half == 0 ? mid : worst.b, 0.0, 0.0, seq++};
            gk15(f, p.a, p.b, p.value, p.err);
            total += p.value;
            total_err += p.err;
            heap.push(p);
        }
        ++n_panels;
    }
    return {total, total_err, n_panels};
}

Result integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, const std::vector<double>& break_points,
                        int max_panels) {
    BatchFn bf = [&f](const double* xs, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(xs[i]);
    };
    return integrate(bf, a, b, abs_tol, break_points, max_panels);
}

} // namespace heatwave::quad
