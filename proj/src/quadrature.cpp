#include "plb/quadrature.hpp"

#include <map>
#include <mutex>

namespace plb {

namespace {

Rule1d compute_gauss_legendre(int n) {
    Rule1d r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            double dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = 0.0;
        for (int k = 0; k < n; ++k) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
        }
        double dp = n * (x * p0 - p1) / (x * x - 1.0);
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

const Rule1d& gauss_legendre(int n) {
    if (n < 1) throw Error("gauss_legendre: order must be >= 1");
    static std::map<int, Rule1d> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

RuleNd tensor_gauss(const Box& box, const std::vector<int>& orders) {
    const int d = box.dim();
    if (static_cast<int>(orders.size()) != d)
        throw Error("tensor_gauss: one order per axis required");
    std::vector<Rule1d> axis(d);
    int total = 1;
    for (int i = 0; i < d; ++i) {
        axis[i] = gauss_on(orders[i], box.lower[i], box.upper[i]);
        total *= orders[i];
    }
    RuleNd out;
    out.nodes.reserve(total);
    out.weights.reserve(total);
    std::vector<int> idx(d, 0);
    for (;;) {
        Vec x(d);
        double w = 1.0;
        for (int i = 0; i < d; ++i) {
            x[i] = axis[i].nodes[idx[i]];
            w *= axis[i].weights[idx[i]];
        }
        out.nodes.push_back(x);
        out.weights.push_back(w);
        int i = 0;
        for (; i < d; ++i) {
            if (++idx[i] < static_cast<int>(axis[i].nodes.size())) break;
            idx[i] = 0;
        }
        if (i == d) break;
    }
    return out;
}

RuleNd monte_carlo(const Box& box, int samples, uint64_t seed) {
    const int d = box.dim();
    CounterRng rng(seed, 0x4d43u /* "MC" */);
    RuleNd out;
    out.nodes.reserve(samples);
    out.weights.assign(samples, box.volume() / samples);
    for (int s = 0; s < samples; ++s) {
        Vec x(d);
        for (int i = 0; i < d; ++i)
            x[i] = rng.uniform(uint64_t(s) * d + i, box.lower[i], box.upper[i]);
        out.nodes.push_back(x);
    }
    return out;
}

RuleNd ball_rule(int dim, double radius, int radial_order, int angular_order) {
    RuleNd out;
    if (dim == 1) {
        Rule1d r = gauss_on(radial_order, -radius, radius);
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            Vec x(1);
            x[0] = r.nodes[i];
            out.nodes.push_back(x);
            out.weights.push_back(r.weights[i]);
        }
        return out;
    }
    Rule1d rad = gauss_on(radial_order, 0.0, radius);
    if (dim == 2) {
        // Polar product: Gauss radially, equispaced (trapezoid) in angle.
        const double dtheta = 2.0 * M_PI / angular_order;
        for (size_t i = 0; i < rad.nodes.size(); ++i) {
            const double r = rad.nodes[i];
            for (int j = 0; j < angular_order; ++j) {
                const double th = dtheta * j;
                Vec x(2);
                x[0] = r * std::cos(th);
                x[1] = r * std::sin(th);
                out.nodes.push_back(x);
                out.weights.push_back(rad.weights[i] * r * dtheta);
            }
        }
        return out;
    }
    if (dim == 3) {
        // Spherical product: Gauss in cos(polar), equispaced azimuth.
        Rule1d pol = gauss_on(std::max(2, angular_order / 2), -1.0, 1.0);
        const int naz = angular_order;
        const double dphi = 2.0 * M_PI / naz;
        for (size_t i = 0; i < rad.nodes.size(); ++i) {
            const double r = rad.nodes[i];
            for (size_t k = 0; k < pol.nodes.size(); ++k) {
                const double c = pol.nodes[k];
                const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                for (int j = 0; j < naz; ++j) {
                    const double ph = dphi * j;
                    Vec x(3);
                    x[0] = r * s * std::cos(ph);
                    x[1] = r * s * std::sin(ph);
                    x[2] = r * c;
                    out.nodes.push_back(x);
                    out.weights.push_back(rad.weights[i] * r * r * pol.weights[k] * dphi);
                }
            }
        }
        return out;
    }
    throw RankError("ball_rule: supported fiber ranks are 1, 2, 3");
}

}  // namespace plb
