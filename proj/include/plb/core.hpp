// core.hpp — shared scalar/vector aliases, chart boxes, error types.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace plb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Errors. Every failure mode carries a distinct type so callers can react
// per contract instead of parsing message strings.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    using Error::Error;
};
struct SingularMetricError : Error {
    using Error::Error;
};
struct DegreeError : Error {
    using Error::Error;
};
struct RankError : Error {
    using Error::Error;
};
struct ChartExitError : Error {
    ChartExitError(const std::string& msg, double t_exit) : Error(msg), exit_time(t_exit) {}
    double exit_time;
};
struct StiffnessError : Error {
    using Error::Error;
};
struct NoConvergenceError : Error {
    using Error::Error;
};
struct CoverageError : Error {
    using Error::Error;
};
struct DescriptorError : Error {
    using Error::Error;
};
struct NormalizationError : Error {
    using Error::Error;
};
struct UndersamplingError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    ConfigError(const std::string& msg, int line_no = -1) : Error(msg), line(line_no) {}
    int line;
};

// ---------------------------------------------------------------------------
// Axis-aligned box in chart coordinates.

struct Box {
    Vec lower;
    Vec upper;

    Box() = default;
    Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {}

    int dim() const { return static_cast<int>(lower.size()); }
    double width(int axis) const { return upper[axis] - lower[axis]; }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim(); ++i) v *= width(i);
        return v;
    }
    bool contains(const Vec& x, double slack = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lower[i] - slack || x[i] > upper[i] + slack) return false;
        return true;
    }
    // True when x keeps `margin` distance from every non-periodic face.
    bool interior(const Vec& x, double margin, const std::vector<bool>& periodic) const {
        for (int i = 0; i < dim(); ++i) {
            if (i < static_cast<int>(periodic.size()) && periodic[i]) continue;
            if (x[i] < lower[i] + margin || x[i] > upper[i] - margin) return false;
        }
        return true;
    }
    static Box cube(int d, double lo, double hi) {
        return Box(Vec::Constant(d, lo), Vec::Constant(d, hi));
    }
};

// Wrap x into the box along periodic axes; non-periodic axes untouched.
inline Vec wrap_point(const Vec& x, const Box& box, const std::vector<bool>& periodic) {
    Vec y = x;
    for (int i = 0; i < box.dim(); ++i) {
        if (i < static_cast<int>(periodic.size()) && periodic[i]) {
            const double L = box.width(i);
            y[i] = x[i] - L * std::floor((x[i] - box.lower[i]) / L);
        }
    }
    return y;
}

// Minimal representative of (a - b) under the periodic identifications.
inline Vec wrap_difference(const Vec& a, const Vec& b, const Box& box,
                           const std::vector<bool>& periodic) {
    Vec d = a - b;
    for (int i = 0; i < box.dim(); ++i) {
        if (i < static_cast<int>(periodic.size()) && periodic[i]) {
            const double L = box.width(i);
            d[i] -= L * std::round(d[i] / L);
        }
    }
    return d;
}

inline int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

}  // namespace plb
