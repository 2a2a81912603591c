#include "plb/geodesics.hpp"

#include <cmath>

namespace plb {

namespace {

// Dormand–Prince 5(4) coefficients.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

Vec geodesic_rhs(const ChartManifold& M, const Vec& state) {
    const int n = M.dim();
    Vec x = state.head(n);
    Vec mu = state.tail(n);
    Vec out(2 * n);
    out.head(n) = mu;
    ChristoffelValues gamma = christoffel(M, x);
    for (int k = 0; k < n; ++k) out[n + k] = -mu.dot(gamma[k] * mu);
    return out;
}

}  // namespace

GeodesicState geodesic_flow(const ChartManifold& M, const Vec& p, const Vec& v, double t,
                            const OdeOptions& opts) {
    const int n = M.dim();
    M.require_inside(p);
    if (t == 0.0) return {p, v};
    if (M.flat()) {
        Vec x = M.wrap(p + t * v);
        if (!M.domain().contains(x, 1e-12)) {
            // Straight line exited a non-periodic chart face.
            double t_exit = t;
            for (int i = 0; i < n; ++i) {
                if (M.periodic()[i] || v[i] == 0.0) continue;
                double lo = (M.domain().lower[i] - p[i]) / v[i];
                double hi = (M.domain().upper[i] - p[i]) / v[i];
                for (double cand : {lo, hi})
                    if (cand > 0 && cand < std::abs(t_exit)) t_exit = cand;
            }
            throw ChartExitError("geodesic exited chart domain", t_exit);
        }
        return {x, v};
    }

    const Stencil st = M.default_stencil();
    const double margin = st.reach() + opts.safe_margin;
    Vec y(2 * n);
    y.head(n) = M.wrap(p);
    y.tail(n) = v;

    const double dir = t > 0 ? 1.0 : -1.0;
    const double t_end = std::abs(t);
    double time = 0.0;
    double h = std::min(0.1, t_end);
    const double h_min = t_end * 1e-14 + 1e-300;
    std::vector<Vec> k(7);

    auto rhs = [&](const Vec& s) -> Vec { return dir * geodesic_rhs(M, s); };

    int steps = 0;
    while (time < t_end) {
        if (++steps > 1000000) throw StiffnessError("geodesic_flow: step budget exhausted");
        h = std::min(h, t_end - time);
        if (h < h_min) throw StiffnessError("geodesic_flow: step size underflow");

        k[0] = rhs(y);
        bool rejected_domain = false;
        Vec y5;
        for (;;) {
            rejected_domain = false;
            for (int s = 1; s < 7; ++s) {
                Vec ys = y;
                for (int j = 0; j < s; ++j) ys += h * kA[s][j] * k[j];
                Vec xs = ys.head(n);
                if (!M.domain().interior(M.wrap(xs), margin, M.periodic())) {
                    rejected_domain = true;
                    break;
                }
                k[s] = rhs(ys);
            }
            if (!rejected_domain) break;
            h *= 0.5;
            if (h < h_min)
                throw ChartExitError("geodesic trajectory exited stencil-safe chart region",
                                     dir * time);
        }

        y5 = y;
        Vec y4 = y;
        for (int s = 0; s < 7; ++s) {
            y5 += h * kB5[s] * k[s];
            y4 += h * kB4[s] * k[s];
        }
        double err = 0.0;
        for (int i = 0; i < 2 * n; ++i) {
            double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
        }
        if (err <= 1.0) {
            time += h;
            y = y5;
            y.head(n) = M.wrap(y.head(n));
            if (!M.domain().interior(y.head(n), margin, M.periodic()))
                throw ChartExitError("geodesic trajectory exited stencil-safe chart region",
                                     dir * time);
        }
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    (void)kC;
    return {y.head(n), y.tail(n)};
}

Vec exp_map(const ChartManifold& M, const Vec& p, const Vec& v, const OdeOptions& opts) {
    if (v.norm() == 0.0) return M.wrap(p);
    return geodesic_flow(M, p, v, 1.0, opts).x;
}

Vec log_map(const ChartManifold& M, const Vec& p, const Vec& q, const OdeOptions& opts) {
    const int n = M.dim();
    Vec v = M.difference(M.wrap(q), M.wrap(p));
    if (M.flat()) return v;

    const double fd_h = 1e-6;
    for (int iter = 0; iter < opts.max_newton_iters; ++iter) {
        Vec r = M.difference(exp_map(M, p, v, opts), M.wrap(q));
        if (r.norm() <= opts.shoot_tol) return v;
        Mat J(n, n);
        for (int j = 0; j < n; ++j) {
            Vec vp = v, vm = v;
            vp[j] += fd_h;
            vm[j] -= fd_h;
            J.col(j) = M.difference(exp_map(M, p, vp, opts), exp_map(M, p, vm, opts)) /
                       (2.0 * fd_h);
        }
        Vec dv = J.fullPivLu().solve(r);
        v -= dv;
    }
    throw NoConvergenceError("log_map: Newton shooting failed to converge");
}

}  // namespace plb
