// thom.hpp — Mathai–Quillen Thom forms: bump profile with closed-form
// derivatives, curvature two-form, graded-algebra assembly and Berezin
// contraction against the fiber volume.
#pragma once

#include "plb/bundles.hpp"
#include "plb/grassmann.hpp"

namespace plb {

// Bump phi(s) = c * exp(-1 / (1 - (2s/delta0^2)^2)) for |s| < delta0^2/2,
// zero outside; derivatives up to `rank` generated symbolically as rational
// multiples of the bump.
class BumpProfile {
public:
    BumpProfile() = default;
    BumpProfile(double delta0, int rank, double c_norm);

    double delta0() const { return delta0_; }
    int rank() const { return rank_; }
    double c_norm() const { return c_norm_; }

    // phi^{(k)}(s), k = 0..rank.
    double derivative(int k, double s) const;

private:
    double delta0_ = 1.0;
    int rank_ = 1;
    double c_norm_ = 1.0;
    // B^{(k)}(t) = B(t) * P_k(t) / (1 - t^2)^{2k}; coefficient rows of P_k.
    std::vector<std::vector<double>> numerators_;
};

// Builds the profile and chooses c so the signed normalization
// (-1)^{m(m+1)/2} * integral over R^m of phi^{(m)}(|x|^2/2) dx = 1 holds.
BumpProfile build_bump(double delta0, int rank, int radial_order = 80);

// Curvature components with the first index raised by the inverse metric:
// raised(i, j, k, l) = g^{is} R^j_{s k l}; antisymmetric in (i, j) and (k, l).
struct RaisedCurvature {
    int dim = 0;
    std::vector<double> data;
    double at(int i, int j, int k, int l) const {
        return data[((i * dim + j) * dim + k) * dim + l];
    }
};
RaisedCurvature curvature_two_form(const ChartManifold& M, const Vec& x);

// The Thom form of a pullback bundle. Degree = rank, support inside the
// delta0-disk, unit fiber integral; closed.
class ThomForm {
public:
    ThomForm(PullbackBundle bundle, BumpProfile profile);

    const PullbackBundle& bundle() const { return bundle_; }
    const BumpProfile& profile() const { return profile_; }
    double delta0() const { return profile_.delta0(); }
    int sign_constant() const { return sigma_; }

    // Coefficients over increasing multi-indices of degree `rank` on the
    // total space, at (x, mu).
    Vec coefficients(const Vec& x, const Vec& mu) const;

    // View as a differential form on the disk-bundle total space.
    DifferentialForm as_form() const;

private:
    PullbackBundle bundle_;
    BumpProfile profile_;
    int sigma_ = 1;  // orientation constant pinned by the flat normalization
};

ThomForm thom_form(const PullbackBundle& b, const BumpProfile& profile);

// Pullback of a Thom form on the target's tangent disk bundle along the
// bundle map F(p, w) = (f(p), w); returns it as a form on b's total space.
DifferentialForm pullback_thom(const PullbackBundle& b, const ThomForm& omega_target);

}  // namespace plb
