#include "doctest.h"

#include <cmath>

#include "plb/bundles.hpp"
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

// Sasaki matrix assembled directly from the analytic sphere data, independent
// of the bundle evaluators.
Mat sphere_pullback_sasaki_oracle(const SmoothMap& f, const Vec& x, const Vec& mu) {
    Mat J = f.differential(x);
    Vec fx = f(x);
    const double st = std::sin(fx[0]), ct = std::cos(fx[0]);
    Mat h = Mat::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = st * st;
    // target Christoffels
    double G[2][2][2] = {};
    G[0][1][1] = -st * ct;
    G[1][0][1] = G[1][1][0] = ct / st;
    // pulled-back connection: conn[a][b][i] = J^l_i G^a_{b l}
    double conn[2][2][2] = {};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int i = 0; i < 2; ++i)
                for (int l = 0; l < 2; ++l) conn[a][b][i] += J(l, i) * G[a][b][l];
    Mat g = f.source()->metric(x);
    Mat out = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double acc = g(i, j);
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c)
                    for (int b = 0; b < 2; ++b)
                        for (int e = 0; e < 2; ++e)
                            acc += h(a, c) * conn[a][b][i] * conn[c][e][j] * mu[b] * mu[e];
            out(i, j) = acc;
        }
    for (int i = 0; i < 2; ++i)
        for (int s = 0; s < 2; ++s) {
            double acc = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) acc += h(s, a) * conn[a][b][i] * mu[b];
            out(i, 2 + s) = acc;
            out(2 + s, i) = acc;
        }
    out.bottomRightCorner(2, 2) = h;
    return out;
}
}  // namespace

TEST_CASE("sasaki_metric: flat identity bundle gives the identity matrix") {
    auto T = make_torus({1.0, 1.0});
    PullbackBundle b(identity_map(T), 0.2);
    Mat S = sasaki_metric(b, pt(0.3, 0.7), pt(0.05, -0.08));
    CHECK((S - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sasaki_metric: mu = 0 gives block diag(g, H) for any bundle") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    Vec x = pt(0.21, 0.62);
    Mat S = sasaki_metric(b, x, Vec::Zero(2));
    BundleData d = b.at(x);
    CHECK((S.topLeftCorner(2, 2) - T->metric(x)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((S.bottomRightCorner(2, 2) - d.H).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(S.topRightCorner(2, 2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sasaki_metric: sphere pullback matches the symbolic oracle entrywise") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    auto f = make_sphere_probe(T, S2);
    PullbackBundle b(f, 0.3);
    Vec x = pt(0.15, 0.4), mu = pt(0.1, 0.0);
    Mat S = sasaki_metric(b, x, mu);
    Mat oracle = sphere_pullback_sasaki_oracle(f, x, mu);
    CHECK((S - oracle).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sasaki_inverse: closed form inverts the metric; top block is g^{-1}") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    SequenceRng rng(21);
    for (int i = 0; i < 10; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        Vec mu = pt(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1));
        Mat S = sasaki_metric(b, x, mu);
        Mat Sinv = sasaki_inverse(b, x, mu);
        CHECK((S * Sinv - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((Sinv.topLeftCorner(2, 2) - T->inverse_metric(x)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("sasaki positive definiteness at random points") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    SequenceRng rng(31);
    for (int i = 0; i < 100; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        Vec nu = pt(rng.uniform(-1, 1), rng.uniform(-1, 1));
        Vec mu = b.at(x).fiber_map * (0.3 * nu / std::max(1.0, nu.norm()));
        Eigen::SelfAdjointEigenSolver<Mat> es(sasaki_metric(b, x, mu));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("connector: flat and vertical cases") {
    auto T = make_torus({1.0, 1.0});
    PullbackBundle flat(identity_map(T), 0.2);
    Vec tangent(4);
    tangent << 0.3, -0.2, 0.7, 0.4;
    Vec z = connector(flat, pt(0.5, 0.5), pt(0.1, 0.0), tangent);
    CHECK((z - pt(0.7, 0.4)).norm() < 1e-14);

    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    Vec vert(4);
    vert << 0, 0, 1.5, -2.0;
    Vec zv = connector(b, pt(0.2, 0.3), pt(0.0, 0.2), vert);
    CHECK((zv - pt(1.5, -2.0)).norm() < 1e-14);

    // horizontal input picks up the b^i mu^j Gamma term; compare against a
    // direct contraction of the cached connection.
    Vec horiz(4);
    horiz << 1.0, 0.0, 0.0, 0.0;
    Vec mu = pt(0.0, 0.2);
    BundleData d = b.at(pt(0.2, 0.3));
    Vec expect(2);
    for (int a = 0; a < 2; ++a) expect[a] = d.conn[a](1, 0) * mu[1];
    CHECK((connector(b, pt(0.2, 0.3), mu, horiz) - expect).norm() < 1e-12);
}

TEST_CASE("fiber_integrate: trivial bundle examples") {
    auto E = make_euclidean(2, 4.0);
    PullbackBundle b(identity_map(E), 1.0);
    auto total = b.total_space();

    // eta = f(x) * 1_{disk} dmu1 ^ dmu2 integrates to pi f(x) (delta = 1).
    IndexTable t(4, 2);
    auto eta = DifferentialForm(total, 2, [t](const Vec& xmu) {
        Vec c = Vec::Zero(t.size());
        c[t.position(0b1100)] = xmu[0] + 2.0;  // dmu1^dmu2 slot
        return c;
    });
    eta.support_hint = total->domain();
    auto out = fiber_integrate(b, eta);
    CHECK(out.degree() == 0);
    CHECK(out.coefficients(pt(0.5, 0.0))[0] == doctest::Approx(M_PI * 2.5).epsilon(1e-10));

    // no fiber-top component -> zero
    auto flat_eta = DifferentialForm(total, 2, [t](const Vec&) {
        Vec c = Vec::Zero(t.size());
        c[t.position(0b0011)] = 1.0;  // dx1^dx2 only
        return c;
    });
    flat_eta.support_hint = total->domain();
    CHECK(fiber_integrate(b, flat_eta).coefficients(pt(0, 0)).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));

    // eta = x1 dx2 ^ dmu1 ^ dmu2 -> pi x1 dx2
    IndexTable t3(4, 3);
    auto mixed = DifferentialForm(total, 3, [t3](const Vec& xmu) {
        Vec c = Vec::Zero(t3.size());
        c[t3.position(0b1110)] = xmu[0];  // dx2^dmu1^dmu2
        return c;
    });
    mixed.support_hint = total->domain();
    auto out3 = fiber_integrate(b, mixed);
    CHECK(out3.degree() == 1);
    Vec c3 = out3.coefficients(pt(1.5, 0.0));
    CHECK(c3[1] == doctest::Approx(M_PI * 1.5).epsilon(1e-10));
    CHECK(c3[0] == doctest::Approx(0.0));
}

TEST_CASE("fiber_integrate: projection formula") {
    auto T = make_torus({1.0, 1.0});
    PullbackBundle b(identity_map(T), 0.25);
    auto total = b.total_space();
    // pr^* alpha ^ eta vs alpha ^ integral(eta) for alpha = sin(2 pi x1) dx1.
    IndexTable t2(4, 2);
    auto eta = DifferentialForm(total, 2, [t2](const Vec& xmu) {
        Vec c = Vec::Zero(t2.size());
        double r2 = xmu[2] * xmu[2] + xmu[3] * xmu[3];
        c[t2.position(0b1100)] = std::exp(-r2) * (1.0 + 0.3 * std::cos(2 * M_PI * xmu[0]));
        return c;
    });
    eta.support_hint = total->domain();
    auto pr_alpha = DifferentialForm(total, 1, [](const Vec& xmu) {
        Vec c = Vec::Zero(4);
        c[0] = std::sin(2 * M_PI * xmu[0]);
        return c;
    });
    auto lhs = fiber_integrate(b, wedge(pr_alpha, eta));
    auto alpha = form_from_expressions(T, 1, {"sin(2*pi*x1)", "0"});
    auto rhs = wedge(alpha, fiber_integrate(b, eta));
    for (auto& x : {pt(0.2, 0.6), pt(0.8, 0.1)})
        CHECK((lhs.coefficients(x) - rhs.coefficients(x)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("quotient_by_pullback_volume: product and warped metrics") {
    // product metric: ratio = sqrt(det fiber block) = 1 for the flat case
    auto T3 = make_torus({1.0, 1.0, 1.0});
    auto T2 = make_torus({1.0, 1.0});
    Vec x3 = Vec::Zero(3);
    CHECK(quotient_by_pullback_volume(*T3, *T2, x3) == doctest::Approx(1.0));

    // warped product dx^2 + (1+x^2) dy^2 over the x-line: ratio = sqrt(1+x^2)
    auto W = make_custom_diag(Box::cube(2, -2, 2), {false, false}, {"1", "1+x1^2"}, 1.0);
    auto L = make_euclidean(1, 2.0);
    CHECK(quotient_by_pullback_volume(*W, *L, pt(1.0, 0.3)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fiber_volume_submersion: box projections and composition") {
    auto E3 = make_euclidean(3, 1.0);
    auto E2 = make_euclidean(2, 1.0);
    auto E1 = make_euclidean(1, 1.0);

    // R^3 -> R^2 with unit-box fiber [0,1]
    CoordinateProjection p32{E3, E2, [](const Vec&) {
        return tensor_gauss(Box::cube(1, 0.0, 1.0), 8);
    }};
    Vec q2 = pt(0.1, -0.2);
    CHECK(fiber_volume_submersion(p32, q2) == doctest::Approx(1.0).epsilon(1e-12));

    // R^3 -> R^1 with unit-square fiber: both the direct 2-D quadrature and
    // the nested composition give the section area.
    CoordinateProjection p31{E3, E1, [](const Vec&) {
        return tensor_gauss(Box::cube(2, 0.0, 1.0), 8);
    }};
    Vec q1(1);
    q1 << 0.3;
    double direct = fiber_volume_submersion(p31, q1);
    CHECK(direct == doctest::Approx(1.0).epsilon(1e-12));

    // nested: integrate the R^2 -> R^1 fiber volume of the middle factor
    CoordinateProjection p21{E2, E1, [](const Vec&) {
        return tensor_gauss(Box::cube(1, 0.0, 1.0), 8);
    }};
    Rule1d mid = gauss_on(8, 0.0, 1.0);
    double nested = 0.0;
    for (size_t i = 0; i < mid.nodes.size(); ++i) {
        Vec qm(2);
        qm << q1[0], mid.nodes[i];
        nested += mid.weights[i] * fiber_volume_submersion(p32, qm);
    }
    CHECK(nested == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("fiber_volume_diffeomorphism: linear map x -> 2x") {
    auto E1 = make_euclidean(1, 8.0);
    Mat A(1, 1);
    A << 2.0;
    auto f = make_linear(E1, E1, A);
    Vec x(1);
    x << 0.7;
    CHECK(fiber_volume_diffeomorphism(f, x) == doctest::Approx(0.5));
}

TEST_CASE("disk bundle fiber volume equals pi delta^2 for rank 2") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    for (double delta : {0.2, 0.35}) {
        PullbackBundle b(make_sphere_probe(T, S2), delta);
        auto total = b.total_space();
        CoordinateProjection proj{total, T, [&b, delta](const Vec& q) {
            return fiber_disk_rule(b, q, delta, FiberRule{24, 48});
        }};
        SequenceRng rng(7);
        for (int i = 0; i < 5; ++i) {
            Vec q = pt(rng.uniform(), rng.uniform());
            CHECK(fiber_volume_submersion(proj, q) ==
                  doctest::Approx(M_PI * delta * delta).epsilon(1e-6));
        }
    }
}

TEST_CASE("totally geodesic fibers: vertical sasaki geodesics stay vertical") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    auto total = b.total_space();
    Vec start(4), vel(4);
    start << 0.25, 0.5, 0.05, 0.08;
    vel << 0, 0, -0.05, -0.08;
    auto s = geodesic_flow(*total, start, vel, 1.0);
    CHECK(std::abs(s.x[0] - 0.25) < 1e-8);
    CHECK(std::abs(s.x[1] - 0.5) < 1e-8);
}

TEST_CASE("riemannian submersion: horizontal block matches the base metric") {
    auto T = make_torus({1.0, 1.0});
    PullbackBundle flat(identity_map(T), 0.2);
    Mat S = sasaki_metric(flat, pt(0.4, 0.9), pt(0.07, 0.03));
    CHECK((S.topLeftCorner(2, 2) - T->metric(pt(0.4, 0.9))).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("disk-bundle geodesic distance to the zero section = bundle norm") {
    auto T = make_torus({1.0, 1.0});
    auto S2 = make_sphere_chart();
    PullbackBundle b(make_sphere_probe(T, S2), 0.3);
    auto total = b.total_space();
    SequenceRng rng(13);
    for (int i = 0; i < 20; ++i) {
        Vec x = pt(rng.uniform(), rng.uniform());
        Vec nu = pt(rng.uniform(-1, 1), rng.uniform(-1, 1));
        if (nu.norm() < 1e-6) continue;
        BundleData d = b.at(x);
        Vec mu = d.fiber_map * (0.25 * nu / nu.norm());
        double bundle_norm = std::sqrt(mu.dot(d.H * mu));
        // vertical straight line to the origin, traversed in unit time
        Vec start(4), vel(4);
        start << x[0], x[1], mu[0], mu[1];
        vel << 0, 0, -mu[0], -mu[1];
        auto end = geodesic_flow(*total, start, vel, 1.0);
        CHECK(end.x.tail(2).norm() < 1e-7);
        // constant-speed geodesic: length = initial sasaki norm of the velocity
        double len = std::sqrt(vel.dot(sasaki_metric(b, x, mu) * vel));
        CHECK(len == doctest::Approx(bundle_norm).epsilon(1e-6));
    }
}
