// analysis.hpp — mollifier smoothing of maps on Euclidean windows and
// empirical moduli of uniform continuity / properness.
#pragma once

#include <functional>

#include "plb/core.hpp"
#include "plb/quadrature.hpp"

namespace plb {

using EuclideanMap = std::function<Vec(const Vec&)>;

// Blend radii and the convolution kernel. The kernel is the normalized bump
// on the unit ball; chi is a smooth non-increasing ramp, 1 on [0, r] and 0
// from r + h on.
struct MollifierConfig {
    double nu = 0.1;   // smoothing radius
    double r = 1.0;    // chi == 1 inside this radius
    double h = 0.5;    // ramp width; chi == 0 beyond r + h
    int dim = 1;       // kernel dimension (1 or 2)
    int quad_order = 24;

    // kernel density at y (|y| < 1), with unit integral over the ball.
    double kernel(const Vec& y) const;
    double kernel_normalization() const;
    double chi(double radius) const;
};

// G_nu(x) = (1 - chi(|x|)) g(x) + chi(|x|) * integral of g(x - nu y) phi(y) dy.
Vec mollify(const EuclideanMap& g, const MollifierConfig& cfg, const Vec& x);

// max over samples of |g - G_nu|.
double sup_error(const EuclideanMap& g, const MollifierConfig& cfg,
                 const std::vector<Vec>& samples);

// Empirical moduli tables.
struct ModulusEstimate {
    std::vector<double> epsilons;       // query values
    std::vector<double> delta_hat;      // continuity modulus, conservative
    std::vector<double> radii;          // R values
    std::vector<double> properness_hat; // S(R) estimates
    double grid_spacing = 0.0;
};

// Samples f on a uniform grid over `window` and tabulates
//   delta_hat(eps) = largest pair distance whose image displacement stays
//                    below eps (deflated by one grid spacing), and
//   S_hat(R)       = max preimage diameter of sampled R-balls.
ModulusEstimate estimate_moduli(const EuclideanMap& f, const Box& window, int grid_per_axis,
                                const std::vector<double>& epsilons,
                                const std::vector<double>& radii);

}  // namespace plb
