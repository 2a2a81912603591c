// numdiff.hpp — central finite differences, order 2 or 4.
#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "plb/core.hpp"

namespace plb {

// Default stencil step: eps^(1/5) minimizes truncation + roundoff for the
// 4th-order first-derivative stencil.
inline double default_stencil_step(double scale = 1.0) {
    return std::pow(std::numeric_limits<double>::epsilon(), 0.2) * scale;
}

struct Stencil {
    int order = 4;  // 2 or 4
    double step = default_stencil_step();

    Stencil() = default;
    Stencil(int ord, double h) : order(ord), step(h) {}

    // d/dx_axis of a vector-valued function.
    template <typename Fn>
    auto partial(const Fn& f, const Vec& x, int axis) const -> decltype(f(x)) {
        Vec xp = x, xm = x;
        const double h = step;
        if (order == 2) {
            xp[axis] += h;
            xm[axis] -= h;
            return (f(xp) - f(xm)) / (2.0 * h);
        }
        Vec xp2 = x, xm2 = x;
        xp[axis] += h;
        xm[axis] -= h;
        xp2[axis] += 2.0 * h;
        xm2[axis] -= 2.0 * h;
        return (-f(xp2) + 8.0 * f(xp) - 8.0 * f(xm) + f(xm2)) / (12.0 * h);
    }

    // Width of chart margin the stencil needs around an evaluation point.
    double reach() const { return (order == 2 ? 1.0 : 2.0) * step; }

    // Jacobian of f: R^d -> R^k as a k x d matrix.
    template <typename Fn>
    Mat jacobian(const Fn& f, const Vec& x) const {
        Vec f0 = f(x);
        Mat J(f0.size(), x.size());
        for (int j = 0; j < x.size(); ++j) J.col(j) = partial(f, x, j);
        return J;
    }
};

}  // namespace plb
