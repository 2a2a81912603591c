#include "plb/forms.hpp"

#include <cmath>

#include "plb/rng.hpp"

namespace plb {

DifferentialForm zero_form(const ManifoldPtr& M, int degree) {
    const int count = binomial(M->dim(), degree);
    return DifferentialForm(M, degree, [count](const Vec&) { return Vec::Zero(count).eval(); });
}

DifferentialForm constant_form(const ManifoldPtr& M, int degree, const Vec& coefficients) {
    const int next = binomial(M->dim(), degree + 1);
    return DifferentialForm(
        M, degree, [coefficients](const Vec&) { return coefficients; },
        degree < M->dim() ? CoeffFn([next](const Vec&) { return Vec::Zero(next).eval(); })
                          : nullptr);
}

DifferentialForm form_from_expressions(const ManifoldPtr& M, int degree,
                                       const std::vector<std::string>& coefficient_exprs) {
    const int d = M->dim();
    IndexTable table(d, degree);
    if (static_cast<int>(coefficient_exprs.size()) != table.size())
        throw ConfigError("form needs " + std::to_string(table.size()) +
                          " coefficient expressions for degree " + std::to_string(degree));
    auto names = chart_variable_names(d);
    std::vector<ExprPtr> trees;
    trees.reserve(coefficient_exprs.size());
    for (const auto& s : coefficient_exprs) trees.push_back(parse_expression(s, names));

    CoeffFn coeff = [trees](const Vec& x) {
        Vec out(trees.size());
        for (size_t i = 0; i < trees.size(); ++i) out[i] = trees[i]->eval(x);
        return out;
    };

    CoeffFn analytic_d;
    if (degree < d) {
        IndexTable out_table(d, degree + 1);
        // (d alpha)_K = sum over j in K of sign * d_j alpha_{K \ j}
        struct Term {
            int out_pos;
            ExprPtr expr;
            double sign;
        };
        std::vector<Term> terms;
        for (int o = 0; o < out_table.size(); ++o) {
            Mask K = out_table.mask(o);
            Mask rest = K;
            while (rest) {
                int j = std::countr_zero(rest);
                rest &= rest - 1;
                Mask sub = K & ~(Mask(1) << j);
                int below = std::popcount(K & ((Mask(1) << j) - 1));
                ExprPtr dcoeff = trees[table.position(sub)]->derivative(j);
                terms.push_back({o, dcoeff, (below & 1) ? -1.0 : 1.0});
            }
        }
        const int out_count = out_table.size();
        analytic_d = [terms, out_count](const Vec& x) {
            Vec out = Vec::Zero(out_count);
            for (const auto& t : terms) out[t.out_pos] += t.sign * t.expr->eval(x);
            return out;
        };
    }
    return DifferentialForm(M, degree, std::move(coeff), std::move(analytic_d));
}

DifferentialForm wedge(const DifferentialForm& alpha, const DifferentialForm& beta) {
    if (alpha.base().get() != beta.base().get())
        throw DomainError("wedge: forms live on different manifolds");
    const int d = alpha.base()->dim();
    const int ka = alpha.degree(), kb = beta.degree();
    if (ka + kb > d) throw DegreeError("wedge: degree overflow");

    IndexTable ta(d, ka), tb(d, kb), tc(d, ka + kb);
    struct Term {
        int out, a, b;
        double sign;
    };
    std::vector<Term> terms;
    for (int i = 0; i < ta.size(); ++i)
        for (int j = 0; j < tb.size(); ++j) {
            Mask ma = ta.mask(i), mb = tb.mask(j);
            if (ma & mb) continue;
            terms.push_back({tc.position(ma | mb), i, j,
                             static_cast<double>(wedge_sign(ma, mb))});
        }
    const int out_count = tc.size();
    auto coeff = [alpha, beta, terms, out_count](const Vec& x) {
        Vec ca = alpha.coefficients(x);
        Vec cb = beta.coefficients(x);
        Vec out = Vec::Zero(out_count);
        for (const auto& t : terms) out[t.out] += t.sign * ca[t.a] * cb[t.b];
        return out;
    };
    DifferentialForm result(alpha.base(), ka + kb, coeff);
    if (alpha.support_hint)
        result.support_hint = alpha.support_hint;
    else if (beta.support_hint)
        result.support_hint = beta.support_hint;
    return result;
}

DifferentialForm add(const DifferentialForm& alpha, const DifferentialForm& beta) {
    if (alpha.degree() != beta.degree()) throw DegreeError("add: degree mismatch");
    CoeffFn d;
    if (alpha.has_analytic_d() && beta.has_analytic_d())
        d = [da = alpha.analytic_d(), db = beta.analytic_d()](const Vec& x) {
            return (da(x) + db(x)).eval();
        };
    return DifferentialForm(
        alpha.base(), alpha.degree(),
        [alpha, beta](const Vec& x) {
            return (alpha.coefficients(x) + beta.coefficients(x)).eval();
        },
        d);
}

DifferentialForm scale(double c, const DifferentialForm& alpha) {
    CoeffFn d;
    if (alpha.has_analytic_d())
        d = [c, da = alpha.analytic_d()](const Vec& x) { return (c * da(x)).eval(); };
    DifferentialForm out(
        alpha.base(), alpha.degree(),
        [c, alpha](const Vec& x) { return (c * alpha.coefficients(x)).eval(); }, d);
    out.support_hint = alpha.support_hint;
    return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& alpha) {
    return exterior_derivative(alpha, alpha.base()->default_stencil());
}

DifferentialForm exterior_derivative(const DifferentialForm& alpha, const Stencil& st,
                                     bool force_numeric) {
    const ManifoldPtr& M = alpha.base();
    const int d = M->dim();
    if (alpha.degree() >= d) throw DegreeError("exterior_derivative: degree = dim");
    if (!force_numeric && alpha.has_analytic_d()) {
        DifferentialForm out(M, alpha.degree() + 1, alpha.analytic_d());
        out.support_hint = alpha.support_hint;
        return out;
    }
    IndexTable tin(d, alpha.degree()), tout(d, alpha.degree() + 1);
    struct Term {
        int out, in, axis;
        double sign;
    };
    std::vector<Term> terms;
    for (int o = 0; o < tout.size(); ++o) {
        Mask K = tout.mask(o);
        Mask rest = K;
        while (rest) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            Mask sub = K & ~(Mask(1) << j);
            int below = std::popcount(K & ((Mask(1) << j) - 1));
            terms.push_back({o, tin.position(sub), j, (below & 1) ? -1.0 : 1.0});
        }
    }
    const int out_count = tout.size();
    auto coeff = [alpha, terms, out_count, st, M](const Vec& x) {
        if (!M->stencil_safe(x, st))
            throw DomainError("exterior_derivative: point not stencil-safe");
        const int dd = M->dim();
        Mat partials(alpha.coefficient_count(), dd);
        auto fn = [&alpha](const Vec& y) { return alpha.coefficients(y); };
        for (int j = 0; j < dd; ++j) partials.col(j) = st.partial(fn, x, j);
        Vec out = Vec::Zero(out_count);
        for (const auto& t : terms) out[t.out] += t.sign * partials(t.in, t.axis);
        return out;
    };
    DifferentialForm out(M, alpha.degree() + 1, coeff);
    out.support_hint = alpha.support_hint;
    return out;
}

double pointwise_norm(const DifferentialForm& alpha, const Vec& x) {
    return pointwise_tensor_norm(*alpha.base(), x, alpha.degree(), alpha.coefficients(x));
}

DifferentialForm pullback(const SmoothMap& f, const DifferentialForm& alpha) {
    if (alpha.base().get() != f.target().get())
        throw DomainError("pullback: form does not live on the map target");
    const int ds = f.source()->dim();
    const int dt = f.target()->dim();
    const int k = alpha.degree();
    if (k > ds) throw DegreeError("pullback: form degree exceeds source dimension");
    IndexTable ts(ds, k), tt(dt, k);
    auto coeff = [f, alpha, ts, tt, k](const Vec& x) {
        Vec ca = alpha.coefficients(f(x));
        Mat J = f.differential(x);
        Vec out = Vec::Zero(ts.size());
        if (k == 0) {
            out[0] = ca[0];
            return out;
        }
        for (int i = 0; i < ts.size(); ++i) {
            auto cols = ts.axes(i);
            double acc = 0.0;
            for (int j = 0; j < tt.size(); ++j) {
                if (ca[j] == 0.0) continue;
                auto rows = tt.axes(j);
                Mat minor(k, k);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) minor(r, c) = J(rows[r], cols[c]);
                acc += ca[j] * minor.determinant();
            }
            out[i] = acc;
        }
        return out;
    };
    return DifferentialForm(f.source(), k, coeff);
}

QuadratureGrid QuadratureGrid::gauss(const ManifoldPtr& M, const Box& window,
                                     const std::vector<int>& orders) {
    return {M, window, tensor_gauss(window, orders)};
}
QuadratureGrid QuadratureGrid::gauss(const ManifoldPtr& M, const Box& window, int order) {
    return {M, window, tensor_gauss(window, order)};
}
QuadratureGrid QuadratureGrid::gauss(const ManifoldPtr& M, int order) {
    return gauss(M, M->domain(), order);
}
QuadratureGrid QuadratureGrid::monte_carlo(const ManifoldPtr& M, const Box& window, int samples,
                                           uint64_t seed) {
    return {M, window, plb::monte_carlo(window, samples, seed)};
}

double QuadratureGrid::riemannian_volume() const {
    double v = 0.0;
    for (int i = 0; i < rule.size(); ++i) v += rule.weights[i] * volume_form(*base, rule.nodes[i]);
    return v;
}

namespace {
void require_window_covers_support(const DifferentialForm& alpha, const Box& window) {
    if (!alpha.support_hint) return;
    const Box& s = *alpha.support_hint;
    for (int i = 0; i < window.dim(); ++i)
        if (s.lower[i] < window.lower[i] - 1e-12 || s.upper[i] > window.upper[i] + 1e-12)
            throw CoverageError("quadrature window does not cover the declared support");
}
}  // namespace

double lp_norm(const DifferentialForm& alpha, double p, const QuadratureGrid& grid) {
    if (p < 1.0) throw Error("lp_norm: p must be >= 1");
    if (alpha.base().get() != grid.base.get())
        throw DomainError("lp_norm: grid lives on a different manifold");
    require_window_covers_support(alpha, grid.window);
    double acc = 0.0;
    for (int i = 0; i < grid.rule.size(); ++i) {
        const Vec& x = grid.rule.nodes[i];
        double nv = pointwise_norm(alpha, x);
        acc += grid.rule.weights[i] * std::pow(nv, p) * volume_form(*grid.base, x);
    }
    return std::pow(acc, 1.0 / p);
}

double intersection_pairing(const DifferentialForm& eta, const DifferentialForm& omega,
                            const QuadratureGrid& grid) {
    if (eta.degree() + omega.degree() != grid.base->dim())
        throw DegreeError("intersection_pairing: degrees must sum to dim");
    DifferentialForm top = wedge(eta, omega);
    double acc = 0.0;
    for (int i = 0; i < grid.rule.size(); ++i)
        acc += grid.rule.weights[i] * top.coefficients(grid.rule.nodes[i])[0];
    return acc;
}

double hadamard_schwartz_constant(int dim, int samples, uint64_t seed) {
    CounterRng rng(seed, 0x4853u);
    uint64_t ctr = 0;
    auto draw = [&]() { return 2.0 * rng.uniform(ctr++) - 1.0; };
    double best = 1.0;
    auto euclid = std::make_shared<ChartManifold>(
        "euclid_tmp", Box::cube(dim, -1.0, 1.0), std::vector<bool>(dim, false),
        [dim](const Vec&) { return Mat::Identity(dim, dim).eval(); }, 1.0);
    euclid->set_flat(true);
    for (int s = 0; s < samples; ++s) {
        int ka = 1 + static_cast<int>(rng.uniform(ctr++) * (dim - 1));
        int kb = 1 + static_cast<int>(rng.uniform(ctr++) * (dim - ka));
        // Simple forms: wedges of random 1-forms.
        auto simple = [&](int k) {
            DifferentialForm form = constant_form(euclid, 0, Vec::Ones(1));
            for (int i = 0; i < k; ++i) {
                Vec c(dim);
                for (int j = 0; j < dim; ++j) c[j] = draw();
                form = wedge(form, constant_form(euclid, 1, c));
            }
            return form;
        };
        DifferentialForm a = simple(ka), b = simple(kb);
        Vec x = Vec::Zero(dim);
        double na = pointwise_norm(a, x), nb = pointwise_norm(b, x);
        if (na < 1e-12 || nb < 1e-12) continue;
        double nw = pointwise_norm(wedge(a, b), x);
        best = std::max(best, nw / (na * nb));
    }
    return best;
}

}  // namespace plb
