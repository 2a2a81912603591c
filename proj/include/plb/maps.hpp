// maps.hpp — smooth maps between chart manifolds.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "plb/geometry.hpp"

namespace plb {

class SmoothMap {
public:
    SmoothMap() = default;
    SmoothMap(std::string name, ManifoldPtr source, ManifoldPtr target,
              std::function<Vec(const Vec&)> value,
              std::function<Mat(const Vec&)> differential = nullptr)
        : name_(std::move(name)),
          source_(std::move(source)),
          target_(std::move(target)),
          value_(std::move(value)),
          differential_(std::move(differential)) {}

    const std::string& name() const { return name_; }
    const ManifoldPtr& source() const { return source_; }
    const ManifoldPtr& target() const { return target_; }

    Vec operator()(const Vec& x) const { return target_->wrap(value_(x)); }

    // Jacobian df^j/dx^i as (dim target) x (dim source); finite differences
    // when no analytic differential was supplied.
    Mat differential(const Vec& x) const {
        if (differential_) return differential_(x);
        Stencil st = source_->default_stencil();
        // Differentiate through the periodic wrap by accumulating increments.
        Vec f0 = value_(x);
        auto local = [&](const Vec& y) {
            return (target_->difference(target_->wrap(value_(y)), target_->wrap(f0)) +
                    target_->wrap(f0))
                .eval();
        };
        return st.jacobian(local, x);
    }

    bool has_analytic_differential() const { return static_cast<bool>(differential_); }

    std::optional<double> lipschitz_hint;
    std::optional<double> proper_hint;

private:
    std::string name_;
    ManifoldPtr source_;
    ManifoldPtr target_;
    std::function<Vec(const Vec&)> value_;
    std::function<Mat(const Vec&)> differential_;
};

inline SmoothMap identity_map(const ManifoldPtr& M) {
    const int n = M->dim();
    return SmoothMap(
        "id", M, M, [](const Vec& x) { return x; },
        [n](const Vec&) { return Mat::Identity(n, n); });
}

inline SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
    // (f o g): source(g) -> target(f)
    auto value = [f, g](const Vec& x) { return f(g(x)); };
    auto diff = [f, g](const Vec& x) -> Mat { return f.differential(g(x)) * g.differential(x); };
    SmoothMap out(f.name() + "." + g.name(), g.source(), f.target(), value, diff);
    if (f.lipschitz_hint && g.lipschitz_hint)
        out.lipschitz_hint = *f.lipschitz_hint * *g.lipschitz_hint;
    if (f.proper_hint && g.proper_hint) out.proper_hint = *f.proper_hint + *g.proper_hint;
    return out;
}

}  // namespace plb
