#include "plb/pullback.hpp"

#include <cmath>

#include "plb/parallel.hpp"

namespace plb {

SmoothMap pf_submersion(const PullbackBundle& b, const OdeOptions& opts) {
    const int n = b.base()->dim();
    const int m = b.rank();
    ManifoldPtr total = b.total_space();
    ManifoldPtr target = b.target();
    const SmoothMap f = b.map();

    if (target->flat()) {
        auto value = [f, n, m](const Vec& xmu) {
            return (f(xmu.head(n)) + xmu.tail(m)).eval();
        };
        auto diff = [f, n, m](const Vec& xmu) {
            Mat J(m, n + m);
            J.leftCols(n) = f.differential(xmu.head(n));
            J.rightCols(m) = Mat::Identity(m, m);
            return J;
        };
        return SmoothMap("p_" + f.name(), total, target, value, diff);
    }

    auto value = [f, target, n, m, opts](const Vec& xmu) {
        return exp_map(*target, f(xmu.head(n)), xmu.tail(m), opts);
    };
    // Finite-difference Jacobian with wrap-aware increments; the step is far
    // above the ODE tolerance so the solves do not pollute the quotient.
    auto diff = [f, target, value, n, m](const Vec& xmu) {
        const Stencil st(4, 5e-4);
        Vec y0 = value(xmu);
        auto local = [&](const Vec& z) {
            return (target->difference(value(z), y0) + y0).eval();
        };
        return st.jacobian(local, xmu);
    };
    return SmoothMap("p_" + f.name(), total, target, value, diff);
}

SmoothMap tf_graph_map(const PullbackBundle& b, const OdeOptions& opts) {
    const int n = b.base()->dim();
    const int m = b.rank();
    SmoothMap pf = pf_submersion(b, opts);
    ManifoldPtr product = product_manifold(b.base(), b.target());
    auto value = [pf, n, m](const Vec& xmu) {
        Vec out(n + m);
        out.head(n) = xmu.head(n);
        out.tail(m) = pf(xmu);
        return out;
    };
    auto diff = [pf, n, m](const Vec& xmu) {
        Mat J = Mat::Zero(n + m, n + m);
        J.topLeftCorner(n, n) = Mat::Identity(n, n);
        J.bottomRows(m) = pf.differential(xmu);
        return J;
    };
    return SmoothMap("t_" + b.map().name(), b.total_space(), product, value, diff);
}

double fiber_volume_tf(const PullbackBundle& b, const Vec& x, const Vec& mu,
                       const OdeOptions& opts) {
    const int n = b.base()->dim();
    const int m = b.rank();
    SmoothMap pf = pf_submersion(b, opts);
    Vec xmu(n + m);
    xmu.head(n) = b.base()->wrap(x);
    xmu.tail(m) = mu;
    Mat Jpf = pf.differential(xmu);
    double det_exp = Jpf.rightCols(m).determinant();
    if (std::abs(det_exp) < 1e-300)
        throw DescriptorError("fiber_volume_tf: degenerate exponential Jacobian");
    double sqrt_det_total = std::sqrt(sasaki_metric(b, x, mu).determinant());
    double vol_base = volume_form(*b.base(), x);
    double vol_target = volume_form(*b.target(), pf(xmu));
    return sqrt_det_total / (vol_base * vol_target * std::abs(det_exp));
}

double fiber_volume_pf(const PullbackBundle& b, const Vec& q, const Box& window, int base_order,
                       const OdeOptions& opts) {
    const int n = b.base()->dim();
    const int m = b.rank();
    const SmoothMap& f = b.map();
    auto tf_density = [&](const Vec& p) -> double {
        Vec fp = f(p);
        Vec w;
        if (b.target()->flat()) {
            w = b.target()->difference(b.target()->wrap(q), fp);
        } else {
            Vec diff = b.target()->difference(b.target()->wrap(q), fp);
            if (diff.norm() > 1.5 * b.delta()) return 0.0;
            try {
                w = log_map(*b.target(), fp, q, opts);
            } catch (const NoConvergenceError&) {
                return 0.0;
            }
        }
        double norm_w = std::sqrt(w.dot(b.target()->metric(fp) * w));
        if (norm_w > b.delta()) return 0.0;
        return fiber_volume_tf(b, p, w, opts);
    };

    // Boundary-mass detector: the window must contain the whole preimage.
    RuleNd faces = tensor_gauss(window, 3);
    for (const auto& node : faces.nodes) {
        for (int axis = 0; axis < n; ++axis) {
            for (double side : {window.lower[axis], window.upper[axis]}) {
                Vec p = node;
                p[axis] = side;
                if (tf_density(p) > 1e-9)
                    throw CoverageError("fiber_volume_pf: mass detected on the window boundary");
            }
        }
    }

    RuleNd grid = tensor_gauss(window, base_order);
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        double rho = tf_density(grid.nodes[i]);
        if (rho != 0.0)
            acc += grid.weights[i] * rho * volume_form(*b.base(), grid.nodes[i]);
    }
    return acc;
}

// ---------------------------------------------------------------------------

TfOperator::TfOperator(ThomForm thom, TfOptions options)
    : thom_(std::move(thom)), options_(options), pf_(pf_submersion(thom_.bundle(), options.ode)) {}

Vec TfOperator::apply(const DifferentialForm& alpha, const Vec& p) const {
    return as_form(alpha).coefficients(p);
}

DifferentialForm TfOperator::as_form(const DifferentialForm& alpha) const {
    if (alpha.base()->dim() != bundle().target()->dim())
        throw DomainError("TfOperator: form must live on the map target");
    DifferentialForm integrand = wedge(pullback(pf_, alpha), thom_.as_form());
    return fiber_integrate(bundle(), integrand, options_.fiber);
}

DifferentialForm TfOperator::d_of_image(const DifferentialForm& alpha) const {
    return exterior_derivative(as_form(alpha), options_.base_stencil, /*force_numeric=*/true);
}

// ---------------------------------------------------------------------------

DifferentialForm interval_integrate(const DifferentialForm& alpha, const ManifoldPtr& factor,
                                    int gauss_order) {
    const ManifoldPtr& product = alpha.base();
    const int d = product->dim();
    const int n = d - 1;
    if (factor->dim() != n)
        throw DomainError("interval_integrate: factor dimension mismatch");
    const int k = alpha.degree();
    if (k == 0) return zero_form(factor, 0);

    IndexTable tin(d, k), tout(n, k - 1);
    const Mask t_bit = Mask(1) << n;
    std::vector<int> slot(tout.size());
    for (int i = 0; i < tout.size(); ++i) slot[i] = tin.position(tout.mask(i) | t_bit);
    const double sign = ((k + 1) % 2 == 0) ? 1.0 : -1.0;

    auto coeff = [alpha, slot, sign, n, gauss_order](const Vec& x) {
        Rule1d r = gauss_on(gauss_order, 0.0, 1.0);
        Vec out = Vec::Zero(slot.size());
        Vec xt(n + 1);
        xt.head(n) = x;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            xt[n] = r.nodes[i];
            Vec c = alpha.coefficients(xt);
            for (size_t s = 0; s < slot.size(); ++s) out[s] += r.weights[i] * c[slot[s]];
        }
        return (sign * out).eval();
    };
    return DifferentialForm(factor, k - 1, coeff);
}

SmoothMap interval_slice(const ManifoldPtr& product, const ManifoldPtr& factor, double t0) {
    const int n = factor->dim();
    auto value = [t0, n](const Vec& x) {
        Vec out(n + 1);
        out.head(n) = x;
        out[n] = t0;
        return out;
    };
    auto diff = [n](const Vec&) {
        Mat J = Mat::Zero(n + 1, n);
        J.topRows(n) = Mat::Identity(n, n);
        return J;
    };
    return SmoothMap("slice", factor, product, value, diff);
}

DifferentialForm homotopy_operator(const SmoothMap& H, const ManifoldPtr& factor,
                                   const DifferentialForm& alpha, int gauss_order) {
    if (alpha.degree() == 0) return zero_form(factor, 0);
    return interval_integrate(pullback(H, alpha), factor, gauss_order);
}

SmoothMap bundle_scaling_homotopy(const PullbackBundle& b, bool forward, const OdeOptions& opts) {
    const int n = b.base()->dim();
    const int m = b.rank();
    ManifoldPtr total = b.total_space();
    ManifoldPtr source = product_with_interval(total);
    ManifoldPtr target = b.target();
    const SmoothMap f = b.map();

    auto ramp = [forward](double s) { return forward ? s : 1.0 - s; };
    if (target->flat()) {
        auto value = [f, n, m, ramp](const Vec& xms) {
            return (f(xms.head(n)) + ramp(xms[n + m]) * xms.segment(n, m)).eval();
        };
        auto diff = [f, n, m, ramp, forward](const Vec& xms) {
            Mat J(m, n + m + 1);
            J.leftCols(n) = f.differential(xms.head(n));
            J.middleCols(n, m) = ramp(xms[n + m]) * Mat::Identity(m, m);
            J.col(n + m) = (forward ? 1.0 : -1.0) * xms.segment(n, m);
            return J;
        };
        return SmoothMap("H_" + f.name(), source, target, value, diff);
    }
    auto value = [f, target, n, m, ramp, opts](const Vec& xms) {
        return exp_map(*target, f(xms.head(n)), ramp(xms[n + m]) * xms.segment(n, m), opts);
    };
    auto diff = [value, target](const Vec& xms) {
        const Stencil st(4, 5e-4);
        Vec y0 = value(xms);
        auto local = [&](const Vec& z) {
            return (target->difference(value(z), y0) + y0).eval();
        };
        return st.jacobian(local, xms);
    };
    return SmoothMap("H_" + f.name(), source, target, value, diff);
}

// ---------------------------------------------------------------------------

namespace {

ResidualReport collect(const std::vector<Vec>& points,
                       const std::function<double(const Vec&)>& norm_at) {
    ResidualReport rep;
    rep.per_point.assign(points.size(), 0.0);
    parallel_for(static_cast<int>(points.size()),
                 [&](int i) { rep.per_point[i] = norm_at(points[i]); }, 1);
    for (double v : rep.per_point) rep.max_norm = std::max(rep.max_norm, v);
    return rep;
}

}  // namespace

ResidualReport residual_T_id(const TfOperator& T_id, const DifferentialForm& alpha,
                             const std::vector<Vec>& points, int interval_order) {
    const PullbackBundle& b = T_id.bundle();
    const ManifoldPtr& M = b.base();
    const int k = alpha.degree();
    DifferentialForm thom = T_id.thom().as_form();
    SmoothMap H_rev = bundle_scaling_homotopy(b, /*forward=*/false, T_id.options().ode);
    ManifoldPtr total = b.total_space();

    auto Y1 = [&](const DifferentialForm& beta) -> DifferentialForm {
        DifferentialForm K = homotopy_operator(H_rev, total, beta, interval_order);
        if (K.degree() == 0 && beta.degree() == 0) return zero_form(M, 0);
        DifferentialForm wedge_part = wedge(K, thom);
        wedge_part.support_hint = total->domain();
        return fiber_integrate(b, wedge_part, T_id.options().fiber);
    };

    DifferentialForm t_alpha = T_id.as_form(alpha);
    DifferentialForm y1_alpha = Y1(alpha);
    bool has_dy1 = k >= 1;
    DifferentialForm dy1_alpha =
        has_dy1 ? exterior_derivative(y1_alpha, T_id.options().base_stencil, true)
                : zero_form(M, k);
    bool has_y1d = k < M->dim();
    DifferentialForm y1_dalpha = has_y1d ? Y1(exterior_derivative(alpha)) : zero_form(M, k);

    auto norm_at = [&](const Vec& p) {
        Vec r = alpha.coefficients(p) - t_alpha.coefficients(p);
        if (has_dy1) r -= dy1_alpha.coefficients(p);
        if (has_y1d) r -= y1_dalpha.coefficients(p);
        return pointwise_tensor_norm(*M, p, k, r);
    };
    return collect(points, norm_at);
}

ResidualReport residual_chain_map(const TfOperator& T, const DifferentialForm& alpha,
                                  const std::vector<Vec>& points) {
    const ManifoldPtr& M = T.bundle().base();
    if (alpha.degree() >= alpha.base()->dim())
        throw DegreeError("residual_chain_map: need deg alpha < dim");
    DifferentialForm lhs = T.d_of_image(alpha);
    DifferentialForm rhs = T.as_form(exterior_derivative(alpha));
    const int k = alpha.degree() + 1;
    auto norm_at = [&](const Vec& p) {
        Vec r = lhs.coefficients(p) - rhs.coefficients(p);
        return pointwise_tensor_norm(*M, p, k, r);
    };
    return collect(points, norm_at);
}

PairingResidual residual_functoriality(const TfOperator& T_fg, const TfOperator& T_f,
                                       const TfOperator& T_g, const DifferentialForm& alpha,
                                       const std::vector<DifferentialForm>& closed_basis,
                                       const QuadratureGrid& grid) {
    DifferentialForm lhs = T_fg.as_form(alpha);
    DifferentialForm mid = T_f.as_form(alpha);
    DifferentialForm rhs = T_g.as_form(mid);
    DifferentialForm diff = add(lhs, scale(-1.0, rhs));
    PairingResidual out;
    out.entries.assign(closed_basis.size(), 0.0);
    parallel_for(static_cast<int>(closed_basis.size()), [&](int i) {
        out.entries[i] = intersection_pairing(diff, closed_basis[i], grid);
    }, 1);
    for (double v : out.entries) out.max_abs = std::max(out.max_abs, std::abs(v));
    return out;
}

}  // namespace plb
