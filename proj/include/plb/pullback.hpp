// pullback.hpp — the disk-bundle submersion p_f, the graph map t_f, the
// operator T_f, interval integration over M x [0,1], homotopy operators and
// the residual verifiers for the operator identities.
#pragma once

#include "plb/thom.hpp"

namespace plb {

// p_f(x, mu) = exp_{f(x)}(mu) on the target, as a smooth map from the disk
// bundle total space. Flat targets get the analytic straight-line shortcut.
SmoothMap pf_submersion(const PullbackBundle& b, const OdeOptions& opts = {});

// t_f(x, mu) = (x, p_f(x, mu)) into M x N with the product metric.
SmoothMap tf_graph_map(const PullbackBundle& b, const OdeOptions& opts = {});

// Fiber volume of the diffeomorphism t_f evaluated at the preimage (x, mu).
double fiber_volume_tf(const PullbackBundle& b, const Vec& x, const Vec& mu,
                       const OdeOptions& opts = {});

// Vol_{p_f}(q): base-window integral of the t_f fiber volume. The window must
// contain the preimage of a delta-ball around q; boundary mass raises
// CoverageError.
double fiber_volume_pf(const PullbackBundle& b, const Vec& q, const Box& window,
                       int base_order = 16, const OdeOptions& opts = {});

// ---------------------------------------------------------------------------

struct TfOptions {
    FiberRule fiber;             // disk quadrature
    Stencil base_stencil;        // for d(T_f alpha) finite differences
    OdeOptions ode;
};

// T_f(alpha) = integral over the delta-disk fibers of p_f^* alpha ^ F^* omega.
class TfOperator {
public:
    TfOperator(ThomForm thom, TfOptions options = {});

    const PullbackBundle& bundle() const { return thom_.bundle(); }
    const ThomForm& thom() const { return thom_; }
    const TfOptions& options() const { return options_; }

    // Value of (T_f alpha) at base point p: coefficients over increasing
    // multi-indices of deg(alpha) on the base.
    Vec apply(const DifferentialForm& alpha, const Vec& p) const;

    // The image form; degree preserved.
    DifferentialForm as_form(const DifferentialForm& alpha) const;

    // d(T_f alpha) by finite differences of `apply` over base points.
    DifferentialForm d_of_image(const DifferentialForm& alpha) const;

private:
    ThomForm thom_;
    TfOptions options_;
    SmoothMap pf_;
};

// ---------------------------------------------------------------------------

// Integration over the interval factor: alpha lives on factor x [0,1] (t is
// the last axis); returns (-1)^{deg alpha + 1} * (integral of the
// dt-coefficients) as a form on the factor, so that
// i_1^* alpha - i_0^* alpha = interval_integrate(d alpha) + d interval_integrate(alpha).
DifferentialForm interval_integrate(const DifferentialForm& alpha, const ManifoldPtr& factor,
                                    int gauss_order = 16);

// Endpoint slice x -> (x, t0) of a product X x [0,1].
SmoothMap interval_slice(const ManifoldPtr& product, const ManifoldPtr& factor, double t0);

// K(alpha) = interval_integrate(H^* alpha) for a homotopy H whose source is
// factor x [0,1].
DifferentialForm homotopy_operator(const SmoothMap& H, const ManifoldPtr& factor,
                                   const DifferentialForm& alpha, int gauss_order = 16);

// The radial homotopy (x, mu, s) -> p_f(x, s*mu) on the disk bundle.
// forward = true runs s: 0 -> 1 (projection to p_f), false reverses it.
SmoothMap bundle_scaling_homotopy(const PullbackBundle& b, bool forward = true,
                                  const OdeOptions& opts = {});

// ---------------------------------------------------------------------------

struct ResidualReport {
    std::vector<double> per_point;  // pointwise norms, one per sample
    double max_norm = 0.0;
};

// (alpha - T_id alpha) - (d Y1 alpha + Y1 d alpha) at the sample points,
// where Y1 chains the reversed radial homotopy through e_omega and the fiber
// integration. Refinement sweeps rerun this with scaled options.
ResidualReport residual_T_id(const TfOperator& T_id, const DifferentialForm& alpha,
                             const std::vector<Vec>& points, int interval_order = 16);

// d T_f alpha - T_f d alpha at the sample points.
ResidualReport residual_chain_map(const TfOperator& T, const DifferentialForm& alpha,
                                  const std::vector<Vec>& points);

// Pairing residuals < (T_{f o g} - T_g T_f) alpha, beta > over a basis of
// closed forms beta of complementary degree.
struct PairingResidual {
    std::vector<double> entries;  // one per basis element
    double max_abs = 0.0;
};
PairingResidual residual_functoriality(const TfOperator& T_fg, const TfOperator& T_f,
                                       const TfOperator& T_g, const DifferentialForm& alpha,
                                       const std::vector<DifferentialForm>& closed_basis,
                                       const QuadratureGrid& grid);

}  // namespace plb
