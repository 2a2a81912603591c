// geodesics.hpp — geodesic flow, exponential map and its inverse by shooting.
#pragma once

#include "plb/geometry.hpp"

namespace plb {

struct GeodesicState {
    Vec x;   // chart point
    Vec mu;  // velocity in chart units per flow time
};

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double shoot_tol = 1e-10;
    int max_newton_iters = 50;
    double safe_margin = 0.0;  // extra distance to keep from non-periodic faces
};

// Integrates xdot^k = mu^k, mudot^k = -Gamma^k_{ij} mu^i mu^j with an embedded
// Dormand-Prince 5(4) pair. Flat manifolds take the straight-line shortcut.
GeodesicState geodesic_flow(const ChartManifold& M, const Vec& p, const Vec& v, double t,
                            const OdeOptions& opts = {});

// exp_p(v): geodesic flow at time 1.
Vec exp_map(const ChartManifold& M, const Vec& p, const Vec& v, const OdeOptions& opts = {});

// Inverse of exp_p by Newton shooting, initial guess = minimal chart difference.
Vec log_map(const ChartManifold& M, const Vec& p, const Vec& q, const OdeOptions& opts = {});

}  // namespace plb
