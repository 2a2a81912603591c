// bundles.hpp — pullback bundles f*TN with Sasaki metric, disk-bundle fiber
// integration, quotients of volume forms and fiber volumes of submersions.
#pragma once

#include <functional>

#include "plb/forms.hpp"
#include "plb/geodesics.hpp"
#include "plb/maps.hpp"

namespace plb {

// Curvature of the pullback connection: value(a, b, i, j) with fiber indices
// (a, b) and base-form slots (i, j).
struct PulledCurvature {
    int rank = 0;
    int base_dim = 0;
    std::vector<double> data;
    double at(int a, int b, int i, int j) const {
        return data[((a * rank + b) * base_dim + i) * base_dim + j];
    }
    double& at(int a, int b, int i, int j) {
        return data[((a * rank + b) * base_dim + i) * base_dim + j];
    }
};

// Per-base-point bundle data; computed once per point, shared by the fiber.
struct BundleData {
    Vec fx;                  // f(x) in the target chart
    Mat jacobian;            // df; rows = target axes, cols = base axes
    Mat H;                   // bundle metric h(f(x))
    Mat H_inv;
    Mat fiber_map;           // mu = fiber_map * nu maps the round ball to the H-ellipsoid
    double sqrt_det_H = 1.0;
    ChristoffelValues conn;  // conn[a](b, i) = pullback Christoffel
    PulledCurvature curv;
};

class PullbackBundle {
public:
    PullbackBundle(SmoothMap f, double delta);

    const SmoothMap& map() const { return f_; }
    const ManifoldPtr& base() const { return f_.source(); }
    const ManifoldPtr& target() const { return f_.target(); }
    int rank() const { return f_.target()->dim(); }
    double delta() const { return delta_; }

    BundleData at(const Vec& x) const;

    Mat bundle_metric(const Vec& x) const { return at(x).H; }

    // Total space of the delta-disk bundle as a chart manifold carrying the
    // Sasaki metric; coordinates (x, mu), fiber axes last.
    ManifoldPtr total_space() const;

private:
    SmoothMap f_;
    double delta_;
    mutable ManifoldPtr total_;  // built lazily
};

// Sasaki metric blocks at (x, mu).
Mat sasaki_metric(const PullbackBundle& b, const Vec& x, const Vec& mu);
// Closed-form inverse.
Mat sasaki_inverse(const PullbackBundle& b, const Vec& x, const Vec& mu);
// Connection map applied to a tangent vector split as (base, fiber) components.
Vec connector(const PullbackBundle& b, const Vec& x, const Vec& mu, const Vec& tangent);

struct FiberRule {
    int radial = 24;
    int angular = 48;
};

// Integration along the disk fibers: drops the fiber-top component of eta
// onto the base. eta must be fiber-compactly supported (support hint on the
// fiber axes or vanishing coefficients near the disk boundary).
DifferentialForm fiber_integrate(const PullbackBundle& b, const DifferentialForm& eta,
                                 const FiberRule& rule = {});

// Quadrature rule over the H(x)-ellipsoid fiber of radius `radius` at x:
// nodes are fiber coordinates mu, weights Lebesgue in mu.
RuleNd fiber_disk_rule(const PullbackBundle& b, const Vec& x, double radius,
                       const FiberRule& rule);

// --- submersions -----------------------------------------------------------

// A submersion written in fibered coordinates: the first base_dim chart axes
// of `total` project onto `base`; the fiber over q is sampled by fiber_rule.
struct CoordinateProjection {
    ManifoldPtr total;
    ManifoldPtr base;
    std::function<RuleNd(const Vec& q)> fiber_rule;  // Lebesgue weights in fiber coords
};

// Ratio coefficient of Vol_total against the pullback of Vol_base on the
// fiber directions, in fibered coordinates.
double quotient_by_pullback_volume(const ChartManifold& total, const ChartManifold& base,
                                   const Vec& x_total);

// Fiber volume of a fibered-coordinate submersion at q.
double fiber_volume_submersion(const CoordinateProjection& pi, const Vec& q);

// Fiber volume of a diffeomorphism-with-image at q = f(x): the reciprocal
// Jacobian density |Vol_X / f*Vol_Y| evaluated at the preimage.
double fiber_volume_diffeomorphism(const SmoothMap& f, const Vec& preimage);

}  // namespace plb
