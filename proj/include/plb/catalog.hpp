// catalog.hpp — built-in manifolds, verification maps and test forms.
#pragma once

#include <map>
#include <string>

#include "plb/forms.hpp"
#include "plb/maps.hpp"

namespace plb {

// Manifolds ------------------------------------------------------------------

// Euclidean box with the identity metric.
ManifoldPtr make_euclidean(int dim, double half_width = 8.0);
// Flat torus with the given period per axis.
ManifoldPtr make_torus(const std::vector<double>& periods);
// Round two-sphere chart (theta, phi), g = diag(1, sin^2 theta); the chart
// keeps `margin` away from the coordinate poles, phi is periodic.
ManifoldPtr make_sphere_chart(double margin = 0.1);
// Diagonal metric from expression strings over x1..xd.
ManifoldPtr make_custom_diag(const Box& domain, const std::vector<bool>& periodic,
                             const std::vector<std::string>& diag_exprs,
                             double injectivity_hint);

struct ManifoldSpec {
    std::string kind;  // euclidean | torus | sphere_chart | custom_diag
    int dim = 2;
    std::vector<double> periods;
    std::vector<double> box_lower, box_upper;
    std::vector<bool> periodic;
    std::vector<std::string> metric_diag;
    double margin = 0.1;
    double injectivity_hint = 0.0;  // 0 = kind default
};
ManifoldPtr make_manifold(const ManifoldSpec& spec);

// Maps -----------------------------------------------------------------------

SmoothMap make_translation(const ManifoldPtr& M, const Vec& offset);
// Lattice rotation (x, y) -> (-y, x) on a square torus.
SmoothMap make_quarter_turn(const ManifoldPtr& torus2);
// Shear (x, y) -> (x + a sin(2 pi y), y) on the unit torus.
SmoothMap make_torus_shear(const ManifoldPtr& torus2, double a = 0.1);
// Degree-one circle self-map x -> x + a sin(2 pi x).
SmoothMap make_circle_wobble(const ManifoldPtr& torus1, double a = 0.2);
// Linear map x -> A x between Euclidean charts.
SmoothMap make_linear(const ManifoldPtr& src, const ManifoldPtr& dst, const Mat& A);
// T^2 -> sphere chart: lands in a pole-free band, periodic in both inputs.
SmoothMap make_sphere_probe(const ManifoldPtr& torus2, const ManifoldPtr& sphere,
                            double theta0 = 1.2, double a_theta = 0.25, double phi_amp = 0.5);

// Named map lookup for scenario configs; `params` supplies amplitudes/offsets.
SmoothMap make_map(const std::string& id, const ManifoldPtr& source, const ManifoldPtr& target,
                   const std::map<std::string, double>& params = {});

// Forms ----------------------------------------------------------------------

// The default verification forms on a manifold: smooth periodic coefficient
// expressions covering degrees 0..dim.
std::vector<DifferentialForm> default_test_forms(const ManifoldPtr& M);

// Closed-form basis used by pairing checks (torus: dx^i plus degree 0 and top).
std::vector<DifferentialForm> closed_basis(const ManifoldPtr& M);

// Listing for `catalog list`.
std::vector<std::string> catalog_manifold_ids();
std::vector<std::string> catalog_map_ids();

}  // namespace plb
