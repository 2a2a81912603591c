// geometry.hpp — chart-based oriented Riemannian manifolds and their
// first-order geometry: metric, Christoffel symbols, volume form, pointwise
// norms of antisymmetric tensors.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "plb/core.hpp"
#include "plb/multiindex.hpp"
#include "plb/numdiff.hpp"

namespace plb {

using MetricFn = std::function<Mat(const Vec&)>;
// values[k](i, j) = Gamma^k_{ij}
using ChristoffelValues = std::vector<Mat>;
using ChristoffelFn = std::function<ChristoffelValues(const Vec&)>;
// riemann[i](j, k*dim + l) flattened is awkward; use a dedicated struct below.

struct RiemannValues {
    // component(i, j, k, l) = R^i_{jkl}, curvature of the Levi-Civita
    // connection: R(e_k, e_l) e_j = R^i_{jkl} e_i.
    int dim = 0;
    std::vector<double> data;
    double& at(int i, int j, int k, int l) {
        return data[((i * dim + j) * dim + k) * dim + l];
    }
    double at(int i, int j, int k, int l) const {
        return data[((i * dim + j) * dim + k) * dim + l];
    }
    static RiemannValues zero(int d) {
        RiemannValues r;
        r.dim = d;
        r.data.assign(size_t(d) * d * d * d, 0.0);
        return r;
    }
};
using RiemannFn = std::function<RiemannValues(const Vec&)>;

// A manifold given by a single box chart with optional per-axis periodic
// identification. Orientation is +1 in chart order.
class ChartManifold {
public:
    ChartManifold() = default;
    ChartManifold(std::string name, Box domain, std::vector<bool> periodic, MetricFn metric,
                  double injectivity_radius_hint);

    const std::string& name() const { return name_; }
    int dim() const { return domain_.dim(); }
    const Box& domain() const { return domain_; }
    const std::vector<bool>& periodic() const { return periodic_; }
    double injectivity_radius_hint() const { return inj_hint_; }

    Mat metric(const Vec& x) const;
    Mat inverse_metric(const Vec& x) const;

    Vec wrap(const Vec& x) const { return wrap_point(x, domain_, periodic_); }
    Vec difference(const Vec& a, const Vec& b) const {
        return wrap_difference(a, b, domain_, periodic_);
    }
    bool stencil_safe(const Vec& x, const Stencil& st) const {
        return domain_.interior(wrap(x), st.reach(), periodic_);
    }
    void require_inside(const Vec& x) const;

    // g-norm of a tangent vector at x.
    double norm(const Vec& x, const Vec& v) const;

    // Optional analytic overrides for the derivative-based quantities.
    void set_analytic_christoffel(ChristoffelFn fn) { christoffel_ = std::move(fn); }
    void set_analytic_riemann(RiemannFn fn) { riemann_ = std::move(fn); }
    void set_flat(bool flat) { flat_ = flat; }
    bool flat() const { return flat_; }
    bool has_analytic_christoffel() const { return static_cast<bool>(christoffel_); }
    bool has_analytic_riemann() const { return static_cast<bool>(riemann_); }
    const ChristoffelFn& analytic_christoffel() const { return christoffel_; }
    const RiemannFn& analytic_riemann() const { return riemann_; }

    Stencil default_stencil() const { return stencil_; }
    void set_default_stencil(const Stencil& st) { stencil_ = st; }

private:
    std::string name_;
    Box domain_;
    std::vector<bool> periodic_;
    MetricFn metric_;
    double inj_hint_ = 1.0;
    ChristoffelFn christoffel_;
    RiemannFn riemann_;
    bool flat_ = false;
    Stencil stencil_;
};

// Levi-Civita symbols Gamma^k_{ij} = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
// Uses the analytic override when present, otherwise the stencil engine.
ChristoffelValues christoffel(const ChartManifold& M, const Vec& x);
ChristoffelValues christoffel(const ChartManifold& M, const Vec& x, const Stencil& st,
                              bool force_numeric = false);

// sqrt(det g) > 0; the volume form is this coefficient times dx^1 ^ ... ^ dx^n.
double volume_form(const ChartManifold& M, const Vec& x);

// Gram matrix of Lambda^k T*_x M induced by g: G_IJ = det(g^{i_a j_b}).
Mat form_gram(const Mat& g_inv, const IndexTable& table);

// Norm of an antisymmetric k-tensor given by coefficients over increasing
// multi-indices.
double pointwise_tensor_norm(const ChartManifold& M, const Vec& x, int degree,
                             const Vec& coefficients);

// Riemann curvature R^i_{jkl} from Christoffel derivatives; analytic override
// when present.
RiemannValues riemann(const ChartManifold& M, const Vec& x);
RiemannValues riemann(const ChartManifold& M, const Vec& x, const Stencil& st,
                      bool force_numeric = false);

// Shared handle; forms, maps and bundles keep their base manifolds alive
// through these.
using ManifoldPtr = std::shared_ptr<const ChartManifold>;

// Product manifold M x [0,1] with metric g + dt^2 (t is the last axis).
ManifoldPtr product_with_interval(const ManifoldPtr& M);

// Product manifold A x B with the block-diagonal product metric.
ManifoldPtr product_manifold(const ManifoldPtr& A, const ManifoldPtr& B);

}  // namespace plb
