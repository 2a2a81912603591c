#include "doctest.h"

#include <cmath>

#include "plb/catalog.hpp"
#include "plb/forms.hpp"
#include "plb/rng.hpp"

using namespace plb;

namespace {
Vec pt(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}
}  // namespace

TEST_CASE("wedge: dx1 ^ dx2 and bilinearity") {
    auto E = make_euclidean(2);
    Vec e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    auto dx1 = constant_form(E, 1, e1);
    auto dx2 = constant_form(E, 1, e2);
    CHECK(wedge(dx1, dx2).coefficients(pt(0, 0))[0] == doctest::Approx(1.0));

    // (2 dx1) ^ (3 dx2 + dx1) = 6 dx1^dx2
    Vec c(2);
    c << 1, 3;
    auto mixed = constant_form(E, 1, c);
    CHECK(wedge(scale(2.0, dx1), mixed).coefficients(pt(0, 0))[0] == doctest::Approx(6.0));

    // graded commutativity for two 1-forms: a^b = -b^a
    auto ab = wedge(dx1, mixed).coefficients(pt(.2, .3));
    auto ba = wedge(mixed, dx1).coefficients(pt(.2, .3));
    CHECK(ab[0] == doctest::Approx(-ba[0]));
}

TEST_CASE("wedge: odd form squares to zero") {
    auto E = make_euclidean(2);
    auto alpha = form_from_expressions(E, 1, {"x1^2", "1"});
    auto sq = wedge(alpha, alpha);
    CHECK(sq.coefficients(pt(1, 1)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("wedge: degree overflow throws") {
    auto E = make_euclidean(2);
    auto top = constant_form(E, 2, Vec::Ones(1));
    CHECK_THROWS_AS(wedge(top, constant_form(E, 1, Vec::Ones(2))), DegreeError);
}

TEST_CASE("exterior_derivative: closed-form examples") {
    auto E = make_euclidean(2);
    // d(x1 dx2) = dx1 ^ dx2
    auto a = form_from_expressions(E, 1, {"0", "x1"});
    CHECK(exterior_derivative(a).coefficients(pt(0.7, -0.4))[0] == doctest::Approx(1.0));
    // d(sin x1) = cos(x1) dx1
    auto f = form_from_expressions(E, 0, {"sin(x1)"});
    CHECK(exterior_derivative(f).coefficients(pt(0, 0))[0] == doctest::Approx(1.0));
    // numeric path agrees with the symbolic one
    auto dn = exterior_derivative(a, E->default_stencil(), /*force_numeric=*/true);
    CHECK(dn.coefficients(pt(0.7, -0.4))[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("exterior_derivative: d(d alpha) vanishes numerically on the torus") {
    auto T = make_torus({1.0, 1.0});
    auto alpha = form_from_expressions(T, 1, {"sin(2*pi*x1)*cos(2*pi*x2)", "0"});
    auto d1 = exterior_derivative(alpha, T->default_stencil(), true);
    auto dd = exterior_derivative(d1, T->default_stencil(), true);
    SequenceRng rng(3);
    for (int i = 0; i < 10; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        CHECK(std::abs(dd.coefficients(x).cwiseAbs().maxCoeff()) < 1e-6);
    }
}

TEST_CASE("leibniz rule at random points") {
    auto T = make_torus({1.0, 1.0});
    auto a = form_from_expressions(T, 1, {"sin(2*pi*x1)", "cos(2*pi*x2)"});
    auto b = form_from_expressions(T, 0, {"cos(2*pi*x1)*cos(2*pi*x2)"});
    auto lhs = exterior_derivative(wedge(b, a), T->default_stencil(), true);
    auto rhs = add(wedge(exterior_derivative(b), a), wedge(b, exterior_derivative(a)));
    SequenceRng rng(5);
    for (int i = 0; i < 20; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        CHECK((lhs.coefficients(x) - rhs.coefficients(x)).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("lp_norm: unit dx1 on the unit box, Gaussian oracle, homogeneity") {
    auto E = make_euclidean(2);
    Vec e1(2);
    e1 << 1, 0;
    auto dx1 = constant_form(E, 1, e1);
    auto grid = QuadratureGrid::gauss(E, Box::cube(2, 0, 1), 8);
    CHECK(lp_norm(dx1, 2.0, grid) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(scale(3.0, dx1), 2.0, grid) ==
          doctest::Approx(3.0 * lp_norm(dx1, 2.0, grid)).epsilon(1e-12));

    // 1-D Gaussian: || e^{-x^2} dx ||_2 = (pi/2)^{1/4}
    auto E1 = make_euclidean(1, 8.0);
    auto g = form_from_expressions(E1, 1, {"exp(-x1^2)"});
    auto grid1 = QuadratureGrid::gauss(E1, Box::cube(1, -6, 6), 64);
    double oracle = integrate_1d([](double x) { return std::exp(-2.0 * x * x); }, -6, 6, 128);
    CHECK(lp_norm(g, 2.0, grid1) == doctest::Approx(std::sqrt(std::sqrt(M_PI / 2))).epsilon(1e-6));
    CHECK(lp_norm(g, 2.0, grid1) == doctest::Approx(std::sqrt(oracle)).epsilon(1e-10));
}

TEST_CASE("lp_norm: window must cover the declared support") {
    auto E = make_euclidean(2);
    auto a = form_from_expressions(E, 1, {"1", "0"});
    a.support_hint = Box::cube(2, -2, 2);
    auto grid = QuadratureGrid::gauss(E, Box::cube(2, -1, 1), 4);
    CHECK_THROWS_AS(lp_norm(a, 2.0, grid), CoverageError);
}

TEST_CASE("quadrature grid: riemannian volume calibration") {
    auto S = make_sphere_chart();
    Vec lo(2), hi(2);
    lo << M_PI / 4, 0.0;
    hi << 3 * M_PI / 4, 2 * M_PI;
    auto grid = QuadratureGrid::gauss(S, Box(lo, hi), 24);
    // integral of sin over the band times 2 pi
    double expect = 2 * M_PI * (std::cos(M_PI / 4) - std::cos(3 * M_PI / 4));
    CHECK(grid.riemannian_volume() == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("monte carlo grid: deterministic for a fixed seed, near the target volume") {
    auto E = make_euclidean(2);
    auto g1 = QuadratureGrid::monte_carlo(E, Box::cube(2, 0, 1), 4000, 99);
    auto g2 = QuadratureGrid::monte_carlo(E, Box::cube(2, 0, 1), 4000, 99);
    CHECK((g1.rule.nodes[17] - g2.rule.nodes[17]).norm() == 0.0);
    CHECK(g1.riemannian_volume() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("intersection_pairing: torus examples") {
    auto T = make_torus({1.0, 1.0});
    Vec e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    auto dx1 = constant_form(T, 1, e1);
    auto dx2 = constant_form(T, 1, e2);
    auto grid = QuadratureGrid::gauss(T, 10);
    CHECK(intersection_pairing(dx1, dx2, grid) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(intersection_pairing(dx1, dx1, grid) == doctest::Approx(0.0));
    auto s1 = form_from_expressions(T, 1, {"sin(2*pi*x1)", "0"});
    auto s2 = form_from_expressions(T, 1, {"0", "sin(2*pi*x2)"});
    // separable product of two zero-mean factors
    CHECK(intersection_pairing(s1, s2, grid) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(intersection_pairing(dx1, constant_form(T, 0, Vec::Ones(1)), grid),
                    DegreeError);
}

TEST_CASE("stokes on the torus: <d a, b> = -(-1)^{|a|} <a, d b> residual") {
    auto T = make_torus({1.0, 1.0});
    auto a = form_from_expressions(T, 0, {"sin(2*pi*x1)*cos(2*pi*x2)"});
    auto b = form_from_expressions(T, 1, {"cos(2*pi*x2)", "sin(2*pi*x1)"});
    auto grid = QuadratureGrid::gauss(T, 16);
    double lhs = intersection_pairing(exterior_derivative(a), b, grid);
    double rhs = -intersection_pairing(a, exterior_derivative(b), grid);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("hadamard-schwartz constant is stable across samples") {
    double c1 = hadamard_schwartz_constant(3, 10000, 17);
    double c2 = hadamard_schwartz_constant(3, 10000, 4242);
    CHECK(c2 <= 1.01 * c1);
    CHECK(c1 <= 1.01 * c2);
    CHECK(c1 >= 1.0);
}

TEST_CASE("pullback: coefficients contract against jacobian minors") {
    auto T = make_torus({1.0, 1.0});
    auto f = make_torus_shear(T, 0.1);
    auto a = form_from_expressions(T, 1, {"0", "1"});  // dx2
    // f*(dx2) = d(x2) = dx2 since the shear fixes the second coordinate.
    auto fa = pullback(f, a);
    CHECK(fa.coefficients(pt(0.3, 0.8))[1] == doctest::Approx(1.0));
    CHECK(fa.coefficients(pt(0.3, 0.8))[0] == doctest::Approx(0.0));
    // f*(dx1) = dx1 + 0.2 pi cos(2 pi x2) dx2
    auto b = form_from_expressions(T, 1, {"1", "0"});
    auto fb = pullback(f, b);
    CHECK(fb.coefficients(pt(0.3, 0.8))[0] == doctest::Approx(1.0));
    CHECK(fb.coefficients(pt(0.3, 0.8))[1] ==
          doctest::Approx(0.2 * M_PI * std::cos(2 * M_PI * 0.8)));
}
