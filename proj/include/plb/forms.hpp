// forms.hpp — differential forms as coefficient functions over increasing
// multi-indices: wedge, exterior derivative, L^p norms, intersection pairing.
#pragma once

#include <functional>
#include <optional>

#include "plb/expr.hpp"
#include "plb/geometry.hpp"
#include "plb/maps.hpp"
#include "plb/quadrature.hpp"

namespace plb {

// Coefficient vector over the increasing multi-indices of (dim, degree).
using CoeffFn = std::function<Vec(const Vec&)>;

class DifferentialForm {
public:
    DifferentialForm() = default;
    DifferentialForm(ManifoldPtr base, int degree, CoeffFn coeff, CoeffFn analytic_d = nullptr)
        : base_(std::move(base)), degree_(degree), coeff_(std::move(coeff)),
          analytic_d_(std::move(analytic_d)) {
        if (degree_ < 0 || degree_ > base_->dim())
            throw DegreeError("form degree outside [0, dim]");
    }

    const ManifoldPtr& base() const { return base_; }
    int degree() const { return degree_; }
    int coefficient_count() const { return binomial(base_->dim(), degree_); }

    Vec coefficients(const Vec& x) const { return coeff_(base_->wrap(x)); }
    bool has_analytic_d() const { return static_cast<bool>(analytic_d_); }
    const CoeffFn& analytic_d() const { return analytic_d_; }

    std::optional<Box> support_hint;

private:
    ManifoldPtr base_;
    int degree_ = 0;
    CoeffFn coeff_;
    CoeffFn analytic_d_;
};

// Zero form of the given degree.
DifferentialForm zero_form(const ManifoldPtr& M, int degree);

// Form with constant coefficients.
DifferentialForm constant_form(const ManifoldPtr& M, int degree, const Vec& coefficients);

// Form whose coefficients are expression strings over x1..xd; the exterior
// derivative is assembled symbolically.
DifferentialForm form_from_expressions(const ManifoldPtr& M, int degree,
                                       const std::vector<std::string>& coefficient_exprs);

DifferentialForm wedge(const DifferentialForm& alpha, const DifferentialForm& beta);
DifferentialForm add(const DifferentialForm& alpha, const DifferentialForm& beta);
DifferentialForm scale(double c, const DifferentialForm& alpha);

// Analytic exterior derivative when available, else stencil differences of
// the coefficients.
DifferentialForm exterior_derivative(const DifferentialForm& alpha);
DifferentialForm exterior_derivative(const DifferentialForm& alpha, const Stencil& st,
                                     bool force_numeric = false);

// Pointwise metric norm |alpha|_x.
double pointwise_norm(const DifferentialForm& alpha, const Vec& x);

// Pullback along a smooth map; coefficients contract against Jacobian minors.
DifferentialForm pullback(const SmoothMap& f, const DifferentialForm& alpha);

// Quadrature grid over a window of the chart.
struct QuadratureGrid {
    ManifoldPtr base;
    Box window;
    RuleNd rule;  // nodes in chart coordinates, weights for the chart measure

    static QuadratureGrid gauss(const ManifoldPtr& M, const Box& window,
                                const std::vector<int>& orders);
    static QuadratureGrid gauss(const ManifoldPtr& M, const Box& window, int order);
    static QuadratureGrid gauss(const ManifoldPtr& M, int order);  // whole domain
    static QuadratureGrid monte_carlo(const ManifoldPtr& M, const Box& window, int samples,
                                      uint64_t seed);

    // Riemannian volume of the window (calibration check).
    double riemannian_volume() const;
};

// [ integral of |alpha|^p dmu ]^(1/p) over the grid window.
double lp_norm(const DifferentialForm& alpha, double p, const QuadratureGrid& grid);

// integral of the top-degree coefficient of eta ^ omega over the window
// (chart measure; the wedge already produces a density).
double intersection_pairing(const DifferentialForm& eta, const DifferentialForm& omega,
                            const QuadratureGrid& grid);

// Empirical wedge-norm constant: max over random simple-form pairs of
// |a^b| / (|a||b|) in the Euclidean metric on R^dim.
double hadamard_schwartz_constant(int dim, int samples, uint64_t seed);

}  // namespace plb
