#include "plb/geometry.hpp"

#include <cmath>

namespace plb {

ChartManifold::ChartManifold(std::string name, Box domain, std::vector<bool> periodic,
                             MetricFn metric, double injectivity_radius_hint)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      periodic_(std::move(periodic)),
      metric_(std::move(metric)),
      inj_hint_(injectivity_radius_hint) {
    if (static_cast<int>(periodic_.size()) != domain_.dim())
        periodic_.resize(domain_.dim(), false);
    double scale = 0.0;
    for (int i = 0; i < domain_.dim(); ++i) scale = std::max(scale, domain_.width(i));
    stencil_ = Stencil(4, default_stencil_step(scale > 0 ? scale : 1.0));
}

Mat ChartManifold::metric(const Vec& x) const {
    Mat g = metric_(wrap(x));
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
        throw SingularMetricError("metric not symmetric at sampled point");
    return g;
}

Mat ChartManifold::inverse_metric(const Vec& x) const {
    Mat g = metric(x);
    Eigen::FullPivLU<Mat> lu(g);
    if (!lu.isInvertible() || g.determinant() <= 0.0)
        throw SingularMetricError("metric not invertible at sampled point");
    return lu.inverse();
}

void ChartManifold::require_inside(const Vec& x) const {
    if (!domain_.contains(wrap(x), 1e-12))
        throw DomainError("point outside chart domain of " + name_);
}

double ChartManifold::norm(const Vec& x, const Vec& v) const {
    Mat g = metric(x);
    return std::sqrt(std::max(0.0, v.dot(g * v)));
}

ChristoffelValues christoffel(const ChartManifold& M, const Vec& x) {
    return christoffel(M, x, M.default_stencil());
}

ChristoffelValues christoffel(const ChartManifold& M, const Vec& x, const Stencil& st,
                              bool force_numeric) {
    const int n = M.dim();
    if (!force_numeric) {
        if (M.flat()) return ChristoffelValues(n, Mat::Zero(n, n));
        if (M.has_analytic_christoffel()) return M.analytic_christoffel()(M.wrap(x));
    }
    if (!M.stencil_safe(x, st))
        throw DomainError("christoffel: point too close to a non-periodic boundary");

    Mat g_inv = M.inverse_metric(x);
    auto metric_flat = [&](const Vec& y) -> Vec {
        Mat g = M.metric(y);
        return Eigen::Map<const Vec>(g.data(), g.size());
    };
    std::vector<Mat> dg(n);
    for (int s = 0; s < n; ++s) {
        Vec flat = st.partial(metric_flat, M.wrap(x), s);
        dg[s] = Eigen::Map<const Mat>(flat.data(), n, n);
    }
    ChristoffelValues gamma(n, Mat::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l)
                    sum += g_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                gamma[k](i, j) = 0.5 * sum;
                gamma[k](j, i) = gamma[k](i, j);
            }
    return gamma;
}

double volume_form(const ChartManifold& M, const Vec& x) {
    M.require_inside(x);
    double det = M.metric(x).determinant();
    if (det <= 0.0) throw SingularMetricError("volume_form: det g <= 0");
    return std::sqrt(det);
}

Mat form_gram(const Mat& g_inv, const IndexTable& table) {
    const int N = table.size();
    Mat G(N, N);
    for (int a = 0; a < N; ++a) {
        auto I = table.axes(a);
        for (int b = 0; b < N; ++b) {
            auto J = table.axes(b);
            const int k = static_cast<int>(I.size());
            if (k == 0) {
                G(a, b) = 1.0;
                continue;
            }
            Mat minor(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) minor(r, c) = g_inv(I[r], J[c]);
            G(a, b) = minor.determinant();
        }
    }
    return G;
}

double pointwise_tensor_norm(const ChartManifold& M, const Vec& x, int degree,
                             const Vec& coefficients) {
    if (degree < 0 || degree > M.dim()) throw DegreeError("tensor degree outside [0, dim]");
    IndexTable table(M.dim(), degree);
    if (coefficients.size() != table.size())
        throw DegreeError("coefficient vector size does not match degree");
    Mat G = form_gram(M.inverse_metric(x), table);
    double sq = coefficients.dot(G * coefficients);
    return std::sqrt(std::max(0.0, sq));
}

RiemannValues riemann(const ChartManifold& M, const Vec& x) {
    return riemann(M, x, M.default_stencil());
}

RiemannValues riemann(const ChartManifold& M, const Vec& x, const Stencil& st,
                      bool force_numeric) {
    const int n = M.dim();
    if (!force_numeric) {
        if (M.flat()) return RiemannValues::zero(n);
        if (M.has_analytic_riemann()) return M.analytic_riemann()(M.wrap(x));
    }
    auto gamma_flat = [&](const Vec& y) -> Vec {
        ChristoffelValues G = christoffel(M, y, st, force_numeric);
        Vec flat(n * n * n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) flat[(k * n + i) * n + j] = G[k](i, j);
        return flat;
    };
    std::vector<Vec> dGamma(n);
    for (int s = 0; s < n; ++s) dGamma[s] = st.partial(gamma_flat, M.wrap(x), s);
    ChristoffelValues G = christoffel(M, x, st, force_numeric);

    RiemannValues R = RiemannValues::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = dGamma[k][(i * n + l) * n + j] - dGamma[l][(i * n + k) * n + j];
                    for (int m = 0; m < n; ++m)
                        v += G[i](k, m) * G[m](l, j) - G[i](l, m) * G[m](k, j);
                    R.at(i, j, k, l) = v;
                }
    return R;
}

ManifoldPtr product_manifold(const ManifoldPtr& A, const ManifoldPtr& B) {
    const int na = A->dim(), nb = B->dim();
    Vec lo(na + nb), hi(na + nb);
    lo.head(na) = A->domain().lower;
    hi.head(na) = A->domain().upper;
    lo.tail(nb) = B->domain().lower;
    hi.tail(nb) = B->domain().upper;
    std::vector<bool> periodic(A->periodic());
    periodic.insert(periodic.end(), B->periodic().begin(), B->periodic().end());
    MetricFn metric = [A, B, na, nb](const Vec& xy) {
        Mat g = Mat::Zero(na + nb, na + nb);
        g.topLeftCorner(na, na) = A->metric(xy.head(na));
        g.bottomRightCorner(nb, nb) = B->metric(xy.tail(nb));
        return g;
    };
    auto P = std::make_shared<ChartManifold>(
        A->name() + "_x_" + B->name(), Box(lo, hi), periodic, metric,
        std::min(A->injectivity_radius_hint(), B->injectivity_radius_hint()));
    P->set_flat(A->flat() && B->flat());
    return P;
}

ManifoldPtr product_with_interval(const ManifoldPtr& M) {
    const int n = M->dim();
    Vec lo(n + 1), hi(n + 1);
    lo.head(n) = M->domain().lower;
    hi.head(n) = M->domain().upper;
    lo[n] = 0.0;
    hi[n] = 1.0;
    std::vector<bool> periodic(M->periodic());
    periodic.push_back(false);
    MetricFn metric = [M, n](const Vec& xt) {
        Mat g = Mat::Zero(n + 1, n + 1);
        g.topLeftCorner(n, n) = M->metric(xt.head(n));
        g(n, n) = 1.0;
        return g;
    };
    auto P = std::make_shared<ChartManifold>(M->name() + "_x_interval", Box(lo, hi), periodic,
                                             metric, M->injectivity_radius_hint());
    P->set_flat(M->flat());
    if (M->has_analytic_christoffel()) {
        const ChristoffelFn base_fn = M->analytic_christoffel();
        P->set_analytic_christoffel([base_fn, n](const Vec& xt) {
            ChristoffelValues base = base_fn(xt.head(n));
            ChristoffelValues out(n + 1, Mat::Zero(n + 1, n + 1));
            for (int k = 0; k < n; ++k) out[k].topLeftCorner(n, n) = base[k];
            return out;
        });
    }
    return P;
}

}  // namespace plb
