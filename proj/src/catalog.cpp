#include "plb/catalog.hpp"

#include <cmath>

namespace plb {

ManifoldPtr make_euclidean(int dim, double half_width) {
    auto M = std::make_shared<ChartManifold>(
        "euclidean" + std::to_string(dim), Box::cube(dim, -half_width, half_width),
        std::vector<bool>(dim, false),
        [dim](const Vec&) { return Mat::Identity(dim, dim).eval(); }, half_width);
    M->set_flat(true);
    return M;
}

ManifoldPtr make_torus(const std::vector<double>& periods) {
    const int dim = static_cast<int>(periods.size());
    Vec lo = Vec::Zero(dim), hi(dim);
    for (int i = 0; i < dim; ++i) hi[i] = periods[i];
    double min_period = hi.minCoeff();
    auto M = std::make_shared<ChartManifold>(
        "torus" + std::to_string(dim), Box(lo, hi), std::vector<bool>(dim, true),
        [dim](const Vec&) { return Mat::Identity(dim, dim).eval(); }, 0.5 * min_period);
    M->set_flat(true);
    return M;
}

ManifoldPtr make_sphere_chart(double margin) {
    Vec lo(2), hi(2);
    lo << margin, 0.0;
    hi << M_PI - margin, 2.0 * M_PI;
    auto M = std::make_shared<ChartManifold>(
        "sphere_chart", Box(lo, hi), std::vector<bool>{false, true},
        [](const Vec& x) {
            Mat g = Mat::Zero(2, 2);
            g(0, 0) = 1.0;
            g(1, 1) = std::sin(x[0]) * std::sin(x[0]);
            return g;
        },
        M_PI / 2.0);
    M->set_analytic_christoffel([](const Vec& x) {
        const double st = std::sin(x[0]), ct = std::cos(x[0]);
        ChristoffelValues G(2, Mat::Zero(2, 2));
        G[0](1, 1) = -st * ct;        // Gamma^theta_{phi phi}
        G[1](0, 1) = ct / st;         // Gamma^phi_{theta phi}
        G[1](1, 0) = ct / st;
        return G;
    });
    M->set_analytic_riemann([](const Vec& x) {
        // Constant curvature 1: R^i_{jkl} = delta^i_k g_jl - delta^i_l g_jk.
        const double s2 = std::sin(x[0]) * std::sin(x[0]);
        Mat g = Mat::Zero(2, 2);
        g(0, 0) = 1.0;
        g(1, 1) = s2;
        RiemannValues R = RiemannValues::zero(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        R.at(i, j, k, l) = (i == k ? g(j, l) : 0.0) - (i == l ? g(j, k) : 0.0);
        return R;
    });
    return M;
}

ManifoldPtr make_custom_diag(const Box& domain, const std::vector<bool>& periodic,
                             const std::vector<std::string>& diag_exprs,
                             double injectivity_hint) {
    const int dim = domain.dim();
    if (static_cast<int>(diag_exprs.size()) != dim)
        throw ConfigError("custom_diag: need one metric expression per axis");
    auto names = chart_variable_names(dim);
    std::vector<ExprPtr> trees;
    for (const auto& s : diag_exprs) trees.push_back(parse_expression(s, names));
    return std::make_shared<ChartManifold>(
        "custom_diag", domain, periodic,
        [trees, dim](const Vec& x) {
            Mat g = Mat::Zero(dim, dim);
            for (int i = 0; i < dim; ++i) g(i, i) = trees[i]->eval(x);
            return g;
        },
        injectivity_hint);
}

ManifoldPtr make_manifold(const ManifoldSpec& spec) {
    if (spec.kind == "euclidean") return make_euclidean(spec.dim);
    if (spec.kind == "torus") {
        std::vector<double> periods = spec.periods;
        if (periods.empty()) periods.assign(spec.dim, 1.0);
        return make_torus(periods);
    }
    if (spec.kind == "sphere_chart") return make_sphere_chart(spec.margin);
    if (spec.kind == "custom_diag") {
        if (spec.box_lower.empty()) throw ConfigError("custom_diag: box bounds required");
        Vec lo = Eigen::Map<const Vec>(spec.box_lower.data(), spec.box_lower.size());
        Vec hi = Eigen::Map<const Vec>(spec.box_upper.data(), spec.box_upper.size());
        double hint = spec.injectivity_hint > 0 ? spec.injectivity_hint : 1.0;
        return make_custom_diag(Box(lo, hi), spec.periodic, spec.metric_diag, hint);
    }
    throw ConfigError("unknown manifold kind '" + spec.kind + "'");
}

// ---------------------------------------------------------------------------

SmoothMap make_translation(const ManifoldPtr& M, const Vec& offset) {
    const int n = M->dim();
    SmoothMap f(
        "translate", M, M, [offset](const Vec& x) { return (x + offset).eval(); },
        [n](const Vec&) { return Mat::Identity(n, n).eval(); });
    f.lipschitz_hint = 1.0;
    f.proper_hint = offset.norm();
    return f;
}

SmoothMap make_quarter_turn(const ManifoldPtr& torus2) {
    Mat A(2, 2);
    A << 0, -1, 1, 0;
    SmoothMap f(
        "quarter_turn", torus2, torus2, [A](const Vec& x) { return (A * x).eval(); },
        [A](const Vec&) { return A; });
    f.lipschitz_hint = 1.0;
    f.proper_hint = 1.0;
    return f;
}

SmoothMap make_torus_shear(const ManifoldPtr& torus2, double a) {
    SmoothMap f(
        "shear", torus2, torus2,
        [a](const Vec& x) {
            Vec y = x;
            y[0] += a * std::sin(2.0 * M_PI * x[1]);
            return y;
        },
        [a](const Vec& x) {
            Mat J = Mat::Identity(2, 2);
            J(0, 1) = a * 2.0 * M_PI * std::cos(2.0 * M_PI * x[1]);
            return J;
        });
    f.lipschitz_hint = 1.0 + 2.0 * M_PI * std::abs(a);
    f.proper_hint = 1.0;
    return f;
}

SmoothMap make_circle_wobble(const ManifoldPtr& torus1, double a) {
    SmoothMap f(
        "wobble", torus1, torus1,
        [a](const Vec& x) {
            Vec y(1);
            y[0] = x[0] + a * std::sin(2.0 * M_PI * x[0]);
            return y;
        },
        [a](const Vec& x) {
            Mat J(1, 1);
            J(0, 0) = 1.0 + a * 2.0 * M_PI * std::cos(2.0 * M_PI * x[0]);
            return J;
        });
    f.lipschitz_hint = 1.0 + 2.0 * M_PI * std::abs(a);
    f.proper_hint = 1.0;
    return f;
}

SmoothMap make_linear(const ManifoldPtr& src, const ManifoldPtr& dst, const Mat& A) {
    SmoothMap f(
        "linear", src, dst, [A](const Vec& x) { return (A * x).eval(); },
        [A](const Vec&) { return A; });
    f.lipschitz_hint = A.norm();
    return f;
}

SmoothMap make_sphere_probe(const ManifoldPtr& torus2, const ManifoldPtr& sphere, double theta0,
                            double a_theta, double phi_amp) {
    auto value = [=](const Vec& x) {
        Vec y(2);
        y[0] = theta0 + a_theta * std::sin(2.0 * M_PI * x[0]);
        y[1] = 2.0 + phi_amp * std::cos(2.0 * M_PI * x[1]);
        return y;
    };
    auto diff = [=](const Vec& x) {
        Mat J = Mat::Zero(2, 2);
        J(0, 0) = a_theta * 2.0 * M_PI * std::cos(2.0 * M_PI * x[0]);
        J(1, 1) = -phi_amp * 2.0 * M_PI * std::sin(2.0 * M_PI * x[1]);
        return J;
    };
    SmoothMap f("sphere_probe", torus2, sphere, value, diff);
    f.lipschitz_hint = 2.0 * M_PI * std::max(a_theta, phi_amp);
    f.proper_hint = 1.0;
    return f;
}

SmoothMap make_map(const std::string& id, const ManifoldPtr& source, const ManifoldPtr& target,
                   const std::map<std::string, double>& params) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (id == "id") return identity_map(source);
    if (id == "translation") {
        Vec off(source->dim());
        for (int i = 0; i < source->dim(); ++i)
            off[i] = get("offset" + std::to_string(i + 1), i == 0 ? 0.25 : 0.125);
        return make_translation(source, off);
    }
    if (id == "quarter_turn") return make_quarter_turn(source);
    if (id == "shear") return make_torus_shear(source, get("a", 0.1));
    if (id == "wobble") return make_circle_wobble(source, get("a", 0.2));
    if (id == "sphere_probe")
        return make_sphere_probe(source, target, get("theta0", 1.2), get("a_theta", 0.25),
                                 get("phi_amp", 0.5));
    throw ConfigError("unknown map id '" + id + "'");
}

// ---------------------------------------------------------------------------

std::vector<DifferentialForm> default_test_forms(const ManifoldPtr& M) {
    std::vector<DifferentialForm> forms;
    const int d = M->dim();
    if (d == 1) {
        forms.push_back(form_from_expressions(M, 0, {"sin(2*pi*x1)"}));
        forms.push_back(form_from_expressions(M, 1, {"cos(2*pi*x1)"}));
        return forms;
    }
    if (d == 2) {
        forms.push_back(form_from_expressions(M, 0, {"sin(2*pi*x1)*cos(2*pi*x2)"}));
        forms.push_back(form_from_expressions(M, 1, {"sin(2*pi*x1)", "0"}));
        forms.push_back(form_from_expressions(M, 1, {"0", "cos(2*pi*x1)*sin(2*pi*x2)"}));
        forms.push_back(form_from_expressions(M, 1, {"cos(2*pi*x2)", "sin(2*pi*x1)"}));
        forms.push_back(form_from_expressions(M, 2, {"1+sin(2*pi*x1)*sin(2*pi*x2)/2"}));
        return forms;
    }
    throw ConfigError("default_test_forms: no catalog for dim " + std::to_string(d));
}

std::vector<DifferentialForm> closed_basis(const ManifoldPtr& M) {
    std::vector<DifferentialForm> basis;
    const int d = M->dim();
    basis.push_back(constant_form(M, 0, Vec::Ones(1)));
    IndexTable t1(d, 1);
    for (int i = 0; i < d; ++i) {
        Vec c = Vec::Zero(d);
        c[i] = 1.0;
        basis.push_back(constant_form(M, 1, c));
    }
    if (d >= 2) basis.push_back(constant_form(M, d, Vec::Ones(1)));
    return basis;
}

std::vector<std::string> catalog_manifold_ids() {
    return {"euclidean1", "euclidean2", "euclidean3", "torus1", "torus2",
            "sphere_chart", "custom_diag"};
}

std::vector<std::string> catalog_map_ids() {
    return {"id", "translation", "quarter_turn", "shear", "wobble", "sphere_probe"};
}

}  // namespace plb
