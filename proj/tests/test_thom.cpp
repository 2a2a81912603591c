#include "doctest.h"

#include <cmath>

#include "plb/catalog.hpp"
#include "plb/rng.hpp"
#include "plb/thom.hpp"

using namespace plb;

namespace {
Vec pt(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}
}  // namespace

TEST_CASE("bump profile: support and normalization") {
    auto phi = build_bump(1.0, 2);
    // zero at s = delta0^2 (outside the support |s| < delta0^2 / 2)
    for (int k = 0; k <= 2; ++k) CHECK(phi.derivative(k, 1.0) == 0.0);
    CHECK(phi.derivative(0, 0.49) > 0.0);
    CHECK(phi.derivative(0, 0.51) == 0.0);

    // signed normalization for m = 2: integral = (-1)^3 = -1
    double integral = 2.0 * M_PI *
                      integrate_1d([&](double r) { return phi.derivative(2, 0.5 * r * r) * r; },
                                   0.0, 1.0, 200);
    CHECK(integral == doctest::Approx(-1.0).epsilon(1e-8));

    // analytic cross-check for m = 2: integral = -2 pi phi'(0)
    CHECK(-2.0 * M_PI * phi.derivative(1, 0.0) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("bump profile: normalization stable under quadrature refinement") {
    auto a = build_bump(0.7, 2, 80);
    auto b = build_bump(0.7, 2, 160);
    CHECK(a.c_norm() == doctest::Approx(b.c_norm()).epsilon(1e-8));
}

TEST_CASE("bump profile: derivative recurrence matches finite differences") {
    auto phi = build_bump(1.2, 3);
    for (int k = 1; k <= 3; ++k) {
        for (double s : {0.05, 0.21, 0.4, 0.6}) {
            const double h = 1e-6;
            double fd = (phi.derivative(k - 1, s + h) - phi.derivative(k - 1, s - h)) / (2 * h);
            CHECK(phi.derivative(k, s) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("curvature_two_form: flat torus vanishes, sphere has K = 1") {
    auto T = make_torus({1.0, 1.0});
    auto R0 = curvature_two_form(*T, pt(0.2, 0.9));
    double m = 0;
    for (double v : R0.data) m = std::max(m, std::abs(v));
    CHECK(m == 0.0);

    auto S = make_sphere_chart();
    Vec x = pt(M_PI / 2, 0.3);
    auto R = curvature_two_form(*S, x);
    // antisymmetry in the raised pair and in the form slots
    SequenceRng rng(2);
    for (int t = 0; t < 8; ++t) {
        int i = rng.uniform() < 0.5, j = rng.uniform() < 0.5, k = rng.uniform() < 0.5,
            l = rng.uniform() < 0.5;
        CHECK(R.at(i, j, k, l) == doctest::Approx(-R.at(j, i, k, l)));
        CHECK(R.at(i, j, k, l) == doctest::Approx(-R.at(i, j, l, k)));
    }
    // constant curvature 1 in the raised-pair convention
    CHECK(R.at(0, 1, 0, 1) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(R.at(1, 0, 0, 1) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("thom form: flat trivial bundle reduces to the pure fiber term") {
    auto T = make_torus({1.0, 1.0});
    PullbackBundle b(identity_map(T), 0.25);
    auto phi = build_bump(0.2, 2);
    ThomForm omega = thom_form(b, phi);
    CHECK(omega.sign_constant() == 1);  // (-1)^m with m = 2

    IndexTable t(4, 2);
    SequenceRng rng(5);
    for (int i = 0; i < 10; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        Vec mu = pt(rng.uniform(-0.12, 0.12), rng.uniform(-0.12, 0.12));
        Vec c = omega.coefficients(x, mu);
        // only the dmu1^dmu2 slot is populated, with the symbolic value
        // (sorting the graded product contributes the (-1)^{m(m-1)/2} flip)
        double expect = -phi.derivative(2, 0.5 * mu.squaredNorm());
        for (int s = 0; s < t.size(); ++s) {
            if (t.mask(s) == 0b1100)
                CHECK(c[s] == doctest::Approx(expect).epsilon(1e-12));
            else
                CHECK(std::abs(c[s]) < 1e-14);
        }
    }
    // unit fiber integral
    auto one = fiber_integrate(b, omega.as_form());
    CHECK(one.coefficients(pt(0.4, 0.8))[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("thom form: rank-1 bundle on the circle normalizes to +1") {
    auto T1 = make_torus({1.0});
    PullbackBundle b(make_circle_wobble(T1, 0.1), 0.3);
    auto phi = build_bump(0.25, 1);
    ThomForm omega = thom_form(b, phi);
    CHECK(omega.sign_constant() == -1);  // (-1)^m with m = 1
    auto one = fiber_integrate(b, omega.as_form(), FiberRule{48, 1});
    Vec q(1);
    q << 0.37;
    CHECK(one.coefficients(q)[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("thom form: unit fiber integral on the curved sphere pullback") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    ThomForm omega = thom_form(b, build_bump(0.24, 2));
    auto one = fiber_integrate(b, omega.as_form());
    SequenceRng rng(23);
    for (int i = 0; i < 20; ++i) {
        Vec q = pt(rng.uniform(), rng.uniform());
        CHECK(one.coefficients(q)[0] == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("thom form: closed on the curved sphere pullback") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    ThomForm omega = thom_form(b, build_bump(0.24, 2));
    auto form = omega.as_form();
    auto total = b.total_space();

    // scale of the coefficients, for a relative residual
    double scale = 0.0;
    SequenceRng rng(29);
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) {
        Vec xmu(4);
        xmu << rng.uniform(), rng.uniform(), rng.uniform(-0.08, 0.08),
            rng.uniform(-0.08, 0.08);
        pts.push_back(xmu);
        scale = std::max(scale, form.coefficients(xmu).cwiseAbs().maxCoeff());
    }

    auto max_residual = [&](double h) {
        double worst = 0.0;
        auto d = exterior_derivative(form, Stencil(2, h), true);
        for (const auto& xmu : pts)
            worst = std::max(worst, d.coefficients(xmu).cwiseAbs().maxCoeff());
        return worst;
    };
    double r1 = max_residual(0.02);
    double r2 = max_residual(0.01);
    double r3 = max_residual(0.005);
    CHECK(r1 < 0.1 * scale);    // closed up to stencil truncation
    CHECK(r2 < r1);
    CHECK(r3 < r2);
    double slope = std::log2(r1 / r3) / 2.0;
    CHECK(slope >= 1.8);
}

TEST_CASE("thom form: support vanishes outside the delta0 disk") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    ThomForm omega = thom_form(b, build_bump(0.2, 2));
    SequenceRng rng(41);
    for (int i = 0; i < 50; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        BundleData d = b.at(x);
        Vec dir = pt(rng.uniform(-1, 1), rng.uniform(-1, 1)).normalized();
        Vec mu = d.fiber_map * (rng.uniform(0.21, 0.29) * dir);  // outside delta0, inside delta
        CHECK(omega.coefficients(x, mu).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("thom form: bounded pointwise sasaki norm, stable under sample doubling") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    ThomForm omega = thom_form(b, build_bump(0.24, 2));
    auto form = omega.as_form();
    auto max_norm = [&](int count, uint64_t seed) {
        SequenceRng rng(seed);
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            Vec xmu(4);
            xmu << rng.uniform(), rng.uniform(), rng.uniform(-0.16, 0.16),
                rng.uniform(-0.16, 0.16);
            worst = std::max(worst, pointwise_norm(form, xmu));
        }
        return worst;
    };
    double a = max_norm(1000, 51);
    double c = max_norm(2000, 51);
    CHECK(std::isfinite(a));
    CHECK(c <= 1.05 * a + 1e-12);
    CHECK(a <= c + 1e-12);
}

TEST_CASE("pullback_thom: f = id reproduces the form, naturality holds for the probe") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();

    // Thom form on the target's own tangent disk bundle
    PullbackBundle target_bundle(identity_map(S2), 0.3);
    ThomForm omega_target = thom_form(target_bundle, build_bump(0.24, 2));

    // f = id: the pulled-back coefficients agree pointwise
    auto pulled_id = pullback_thom(target_bundle, omega_target);
    Vec xmu(4);
    xmu << 1.3, 2.0, 0.05, 0.02;
    CHECK((pulled_id.coefficients(xmu) - omega_target.as_form().coefficients(xmu))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    // naturality: the direct construction on f*TS2 equals F^* of the target form
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    ThomForm direct = thom_form(b, build_bump(0.24, 2));
    auto pulled = pullback_thom(b, omega_target);
    SequenceRng rng(61);
    for (int i = 0; i < 10; ++i) {
        Vec z(4);
        z << rng.uniform(), rng.uniform(), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1);
        CHECK((pulled.coefficients(z) - direct.as_form().coefficients(z)).cwiseAbs().maxCoeff() <
              1e-10);
    }

    // re-certified fiber integral after pullback along the circle wobble
    auto T1 = make_torus({1.0});
    PullbackBundle tb1(identity_map(T1), 0.3);
    ThomForm om1 = thom_form(tb1, build_bump(0.25, 1));
    PullbackBundle wb(make_circle_wobble(T1, 0.1), 0.3);
    auto pulled1 = pullback_thom(wb, om1);
    auto one = fiber_integrate(wb, pulled1, FiberRule{48, 1});
    SequenceRng rng1(71);
    for (int i = 0; i < 10; ++i) {
        Vec q(1);
        q << rng1.uniform();
        CHECK(one.coefficients(q)[0] == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("thom form: rank mismatch and oversized support are rejected") {
    auto T = make_torus({1.0, 1.0});
    PullbackBundle b(identity_map(T), 0.25);
    CHECK_THROWS_AS(thom_form(b, build_bump(0.2, 1)), RankError);
    CHECK_THROWS_AS(thom_form(b, build_bump(0.4, 2)), RankError);
}
