// quadrature.hpp — Gauss–Legendre rules, tensor-product box rules,
// polar/spherical ball rules, Monte Carlo with a counter-based stream.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "plb/core.hpp"
#include "plb/rng.hpp"

namespace plb {

struct Rule1d {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Gauss–Legendre by Newton iteration on P_n; cached per order.
const Rule1d& gauss_legendre(int n);

// Nodes/weights mapped to [a, b].
inline Rule1d gauss_on(int n, double a, double b) {
    const Rule1d& base = gauss_legendre(n);
    Rule1d out;
    out.nodes.resize(base.nodes.size());
    out.weights.resize(base.weights.size());
    for (size_t i = 0; i < base.nodes.size(); ++i) {
        out.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[i];
        out.weights[i] = 0.5 * (b - a) * base.weights[i];
    }
    return out;
}

template <typename Fn>
double integrate_1d(const Fn& f, double a, double b, int order) {
    Rule1d r = gauss_on(order, a, b);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

// d-dimensional quadrature node list.
struct RuleNd {
    std::vector<Vec> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

// Tensor-product Gauss rule over a box, one order per axis.
RuleNd tensor_gauss(const Box& box, const std::vector<int>& orders);
inline RuleNd tensor_gauss(const Box& box, int order) {
    return tensor_gauss(box, std::vector<int>(box.dim(), order));
}

// Monte Carlo nodes over a box; stream keyed by sample index.
RuleNd monte_carlo(const Box& box, int samples, uint64_t seed);

// Quadrature over the Euclidean ball of given radius in R^dim (dim = 1, 2, 3)
// with Lebesgue weights: polar/spherical product rules.
RuleNd ball_rule(int dim, double radius, int radial_order, int angular_order);

}  // namespace plb
