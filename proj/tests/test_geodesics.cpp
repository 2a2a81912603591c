#include "doctest.h"

#include <cmath>

#include "plb/catalog.hpp"
#include "plb/geodesics.hpp"
#include "plb/rng.hpp"

using namespace plb;

namespace {
Vec pt(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}
}  // namespace

TEST_CASE("geodesic_flow: euclidean straight lines") {
    auto M = make_euclidean(2);
    auto s = geodesic_flow(*M, pt(0, 0), pt(1, 2), 0.5);
    CHECK(s.x[0] == doctest::Approx(0.5));
    CHECK(s.x[1] == doctest::Approx(1.0));
    CHECK(s.mu[0] == doctest::Approx(1.0));
    CHECK(s.mu[1] == doctest::Approx(2.0));
}

TEST_CASE("geodesic_flow: t = 0 returns inputs exactly") {
    auto M = make_sphere_chart();
    Vec p = pt(1.0, 2.0), v = pt(0.2, -0.1);
    auto s = geodesic_flow(*M, p, v, 0.0);
    CHECK((s.x - p).norm() == 0.0);
    CHECK((s.mu - v).norm() == 0.0);
}

TEST_CASE("geodesic_flow: meridian great circle on the sphere chart") {
    auto M = make_sphere_chart();
    // From the equator, unit velocity along -theta moves north along a
    // meridian: theta(t) = pi/2 - t.
    auto s = geodesic_flow(*M, pt(M_PI / 2, 0.0), pt(-1.0, 0.0), M_PI / 4);
    CHECK(s.x[0] == doctest::Approx(M_PI / 4).epsilon(1e-8));
    CHECK(std::abs(s.x[1]) < 1e-8);
    CHECK(M->norm(s.x, s.mu) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("geodesic_flow: flat torus wraps") {
    auto T = make_torus({1.0, 1.0});
    auto s = geodesic_flow(*T, pt(0.9, 0.0), pt(0.3, 0.0), 1.0);
    CHECK(s.x[0] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("geodesic_flow: energy conservation along a sphere trajectory") {
    auto M = make_sphere_chart();
    Vec p = pt(1.2, 0.4), v = pt(0.3, 0.5);
    double e0 = v.dot(M->metric(p) * v);
    for (double t : {0.3, 0.7, 1.1}) {
        auto s = geodesic_flow(*M, p, v, t);
        double e = s.mu.dot(M->metric(s.x) * s.mu);
        CHECK(e == doctest::Approx(e0).epsilon(1e-8));
    }
}

TEST_CASE("geodesic_flow: scaling law flow(p, c v, t) = flow(p, v, c t)") {
    auto M = make_sphere_chart();
    Vec p = pt(1.4, 1.0), v = pt(0.2, 0.3);
    for (double c : {0.5, 2.0}) {
        auto a = geodesic_flow(*M, p, (c * v).eval(), 0.4);
        auto b = geodesic_flow(*M, p, v, c * 0.4);
        CHECK((a.x - b.x).norm() < 1e-8);
    }
}

TEST_CASE("geodesic_flow: chart exit reports the exit time") {
    auto M = make_sphere_chart();
    // Due north from near the pole margin: exits the theta range.
    CHECK_THROWS_AS(geodesic_flow(*M, pt(0.3, 0.0), pt(-1.0, 0.0), 1.0), ChartExitError);
}

TEST_CASE("exp_map: identities") {
    auto M = make_sphere_chart();
    Vec p = pt(1.0, 1.0);
    CHECK((exp_map(*M, p, Vec::Zero(2)) - p).norm() == 0.0);

    auto E = make_euclidean(2);
    Vec v = pt(0.4, -0.2);
    CHECK((exp_map(*E, p, v) - (p + v)).norm() < 1e-14);

    // north by pi/4 from the equator lands at theta = pi/2 - pi/4
    Vec q = exp_map(*M, pt(M_PI / 2, 0.0), pt(-M_PI / 4, 0.0));
    CHECK(q[0] == doctest::Approx(M_PI / 4).epsilon(1e-8));
}

TEST_CASE("log_map: euclidean difference and torus minimal wrap") {
    auto E = make_euclidean(2);
    CHECK((log_map(*E, pt(1, 1), pt(2, 0)) - pt(1, -1)).norm() < 1e-14);

    auto T = make_torus({1.0, 1.0});
    Vec v = log_map(*T, pt(0.9, 0.5), pt(0.1, 0.5));
    CHECK(v[0] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("log_map: round trip on the sphere") {
    auto M = make_sphere_chart();
    SequenceRng rng(11);
    for (int i = 0; i < 5; ++i) {
        Vec p = pt(rng.uniform(0.8, 2.2), rng.uniform(0.5, 5.5));
        Vec v = pt(rng.uniform(-1, 1), rng.uniform(-1, 1));
        v *= 0.3 / M->norm(p, v);
        Vec w = log_map(*M, p, exp_map(*M, p, v));
        CHECK((w - v).norm() < 1e-7);
    }
}
