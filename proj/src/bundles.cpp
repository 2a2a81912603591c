#include "plb/bundles.hpp"

#include <cmath>

namespace plb {

PullbackBundle::PullbackBundle(SmoothMap f, double delta) : f_(std::move(f)), delta_(delta) {
    if (delta_ <= 0.0) throw DescriptorError("PullbackBundle: delta must be positive");
    if (delta_ > f_.target()->injectivity_radius_hint() + 1e-12)
        throw DescriptorError("PullbackBundle: delta exceeds target injectivity hint");
}

BundleData PullbackBundle::at(const Vec& x) const {
    BundleData d;
    const int m = rank();
    d.fx = f_(x);
    d.jacobian = f_.differential(x);
    d.H = f_.target()->metric(d.fx);
    Eigen::LLT<Mat> llt(d.H);
    if (llt.info() != Eigen::Success)
        throw SingularMetricError("bundle metric not positive-definite");
    d.H_inv = llt.solve(Mat::Identity(m, m));
    // H = L L^T; mu = L^{-T} nu maps |nu| <= r to mu^T H mu <= r^2.
    Mat L = llt.matrixL();
    d.fiber_map = L.transpose().fullPivLu().inverse();
    d.sqrt_det_H = std::sqrt(d.H.determinant());

    ChristoffelValues target_gamma = christoffel(*f_.target(), d.fx);
    d.conn.assign(m, Mat::Zero(m, base()->dim()));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int i = 0; i < base()->dim(); ++i) {
                double acc = 0.0;
                for (int l = 0; l < m; ++l) acc += d.jacobian(l, i) * target_gamma[a](b, l);
                d.conn[a](b, i) = acc;
            }

    RiemannValues target_R = riemann(*f_.target(), d.fx);
    const int n = base()->dim();
    d.curv.rank = m;
    d.curv.base_dim = n;
    d.curv.data.assign(size_t(m) * m * n * n, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < m; ++k)
                        for (int l = 0; l < m; ++l)
                            acc += d.jacobian(k, i) * d.jacobian(l, j) * target_R.at(a, b, k, l);
                    d.curv.at(a, b, i, j) = acc;
                }
    return d;
}

ManifoldPtr PullbackBundle::total_space() const {
    if (total_) return total_;
    const int n = base()->dim();
    const int m = rank();
    // Coordinate box: base box times a fiber box wide enough to contain the
    // delta-ellipsoid at every sampled base point.
    Vec stretch = Vec::Zero(m);
    RuleNd probe = tensor_gauss(base()->domain(), 4);
    for (const auto& x : probe.nodes) {
        Mat Hinv = at(x).H_inv;
        for (int a = 0; a < m; ++a)
            stretch[a] = std::max(stretch[a], std::sqrt(std::max(0.0, Hinv(a, a))));
    }
    Vec lo(n + m), hi(n + m);
    lo.head(n) = base()->domain().lower;
    hi.head(n) = base()->domain().upper;
    for (int a = 0; a < m; ++a) {
        lo[n + a] = -1.1 * delta_ * stretch[a];
        hi[n + a] = 1.1 * delta_ * stretch[a];
    }
    std::vector<bool> periodic(base()->periodic());
    periodic.resize(n + m, false);

    PullbackBundle self = *this;
    MetricFn metric = [self, n, m](const Vec& xmu) {
        return sasaki_metric(self, xmu.head(n), xmu.tail(m));
    };
    auto total = std::make_shared<ChartManifold>(
        base()->name() + "_disk_bundle", Box(lo, hi), periodic, metric,
        std::min(delta_, base()->injectivity_radius_hint()));
    if (base()->flat() && target()->flat()) total->set_flat(true);
    total_ = total;
    return total_;
}

Mat sasaki_metric(const PullbackBundle& b, const Vec& x, const Vec& mu) {
    const int n = b.base()->dim();
    const int m = b.rank();
    BundleData d = b.at(x);
    if (std::sqrt(mu.dot(d.H * mu)) > b.delta() * (1.0 + 1e-9))
        throw DomainError("sasaki_metric: |mu| exceeds the disk radius");
    Mat g = b.base()->metric(x);
    Mat out = Mat::Zero(n + m, n + m);
    // Gamma mu contraction: (Gmu)^a_i = conn[a](b, i) mu^b
    Mat Gmu(m, n);
    for (int a = 0; a < m; ++a) Gmu.row(a) = (mu.transpose() * d.conn[a]);
    out.topLeftCorner(n, n) = g + Gmu.transpose() * d.H * Gmu;
    out.topRightCorner(n, m) = (d.H * Gmu).transpose();
    out.bottomLeftCorner(m, n) = d.H * Gmu;
    out.bottomRightCorner(m, m) = d.H;
    return out;
}

Mat sasaki_inverse(const PullbackBundle& b, const Vec& x, const Vec& mu) {
    const int n = b.base()->dim();
    const int m = b.rank();
    BundleData d = b.at(x);
    Mat g_inv = b.base()->inverse_metric(x);
    Mat Gmu(m, n);
    for (int a = 0; a < m; ++a) Gmu.row(a) = (mu.transpose() * d.conn[a]);
    Mat out = Mat::Zero(n + m, n + m);
    out.topLeftCorner(n, n) = g_inv;
    out.topRightCorner(n, m) = -g_inv * Gmu.transpose();
    out.bottomLeftCorner(m, n) = -Gmu * g_inv;
    out.bottomRightCorner(m, m) = d.H_inv + Gmu * g_inv * Gmu.transpose();
    return out;
}

Vec connector(const PullbackBundle& b, const Vec& x, const Vec& mu, const Vec& tangent) {
    const int n = b.base()->dim();
    const int m = b.rank();
    if (tangent.size() != n + m) throw DomainError("connector: tangent must split (base, fiber)");
    BundleData d = b.at(x);
    Vec base_part = tangent.head(n);
    Vec vert = tangent.tail(m);
    Vec out = vert;
    for (int a = 0; a < m; ++a) out[a] += base_part.dot(d.conn[a].transpose() * mu);
    return out;
}

RuleNd fiber_disk_rule(const PullbackBundle& b, const Vec& x, double radius,
                       const FiberRule& rule) {
    BundleData d = b.at(x);
    RuleNd ball = ball_rule(b.rank(), radius, rule.radial, rule.angular);
    const double jac = 1.0 / d.sqrt_det_H;  // det of the ball -> ellipsoid map
    RuleNd out;
    out.nodes.reserve(ball.size());
    out.weights.reserve(ball.size());
    for (int i = 0; i < ball.size(); ++i) {
        out.nodes.push_back(d.fiber_map * ball.nodes[i]);
        out.weights.push_back(ball.weights[i] * jac);
    }
    return out;
}

DifferentialForm fiber_integrate(const PullbackBundle& b, const DifferentialForm& eta,
                                 const FiberRule& rule) {
    const int n = b.base()->dim();
    const int m = b.rank();
    if (eta.base()->dim() != n + m)
        throw DomainError("fiber_integrate: form does not live on this disk bundle");
    const int k = eta.degree();
    if (k < m) {
        // No fiber-top component of a form of degree below the rank.
        return zero_form(b.base(), 0);
    }
    if (!eta.support_hint)
        throw CoverageError("fiber_integrate: fiber-compact support hint required");

    IndexTable ttotal(n + m, k);
    IndexTable tbase(n, k - m);
    const Mask fiber_top = ((Mask(1) << m) - 1) << n;
    std::vector<int> slot(tbase.size());
    for (int i = 0; i < tbase.size(); ++i) slot[i] = ttotal.position(tbase.mask(i) | fiber_top);

    PullbackBundle bundle = b;
    auto coeff = [bundle, eta, slot, n, m, rule](const Vec& q) {
        RuleNd fiber = fiber_disk_rule(bundle, q, bundle.delta(), rule);
        Vec out = Vec::Zero(slot.size());
        Vec xmu(n + m);
        xmu.head(n) = bundle.base()->wrap(q);
        for (int i = 0; i < fiber.size(); ++i) {
            xmu.tail(m) = fiber.nodes[i];
            Vec c = eta.coefficients(xmu);
            for (size_t s = 0; s < slot.size(); ++s)
                out[s] += fiber.weights[i] * c[slot[s]];
        }
        return out;
    };
    return DifferentialForm(b.base(), k - m, coeff);
}

double quotient_by_pullback_volume(const ChartManifold& total, const ChartManifold& base,
                                   const Vec& x_total) {
    const int nb = base.dim();
    if (total.dim() <= nb)
        throw DescriptorError("quotient: total dimension must exceed base dimension");
    double num = volume_form(total, x_total);
    double den = volume_form(base, x_total.head(nb));
    if (den <= 0.0) throw DescriptorError("quotient: degenerate submersion");
    return num / den;
}

double fiber_volume_submersion(const CoordinateProjection& pi, const Vec& q) {
    RuleNd fiber = pi.fiber_rule(q);
    const int nb = pi.base->dim();
    const int nf = pi.total->dim() - nb;
    double acc = 0.0;
    Vec x(pi.total->dim());
    x.head(nb) = q;
    for (int i = 0; i < fiber.size(); ++i) {
        if (fiber.nodes[i].size() != nf)
            throw DescriptorError("fiber_volume_submersion: fiber node dimension mismatch");
        x.tail(nf) = fiber.nodes[i];
        acc += fiber.weights[i] * quotient_by_pullback_volume(*pi.total, *pi.base, x);
    }
    return acc;
}

double fiber_volume_diffeomorphism(const SmoothMap& f, const Vec& preimage) {
    Mat J = f.differential(preimage);
    if (J.rows() != J.cols())
        throw DescriptorError("fiber_volume_diffeomorphism: map must preserve dimension");
    double detJ = J.determinant();
    if (std::abs(detJ) < 1e-300)
        throw DescriptorError("fiber_volume_diffeomorphism: singular differential");
    double vol_src = volume_form(*f.source(), preimage);
    double vol_dst = volume_form(*f.target(), f(preimage));
    return std::abs(vol_src / (vol_dst * detJ));
}

}  // namespace plb
