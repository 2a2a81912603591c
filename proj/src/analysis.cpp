#include "plb/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace plb {

namespace {
double unit_bump(double rho2) {
    // exp(-1/(1-rho^2)) on the open unit ball, 0 outside.
    if (rho2 >= 1.0 - 1e-12) return 0.0;
    return std::exp(-1.0 / (1.0 - rho2));
}
double smooth_step(double t) {
    // C-infinity ramp: 1 for t <= 0, 0 for t >= 1, strictly decreasing between.
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    auto b = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    return b(1.0 - t) / (b(1.0 - t) + b(t));
}
}  // namespace

double MollifierConfig::kernel_normalization() const {
    RuleNd ball = ball_rule(dim, 1.0, quad_order, 2 * quad_order);
    double acc = 0.0;
    for (int i = 0; i < ball.size(); ++i)
        acc += ball.weights[i] * unit_bump(ball.nodes[i].squaredNorm());
    return acc;
}

double MollifierConfig::kernel(const Vec& y) const {
    return unit_bump(y.squaredNorm()) / kernel_normalization();
}

double MollifierConfig::chi(double radius) const {
    return smooth_step((radius - r) / h);
}

Vec mollify(const EuclideanMap& g, const MollifierConfig& cfg, const Vec& x) {
    if (x.norm() > cfg.r + 2.0 * cfg.h + 1e-12)
        throw DomainError("mollify: point outside the blend window");
    if (cfg.nu == 0.0) return g(x);
    const double c = cfg.chi(x.norm());
    Vec direct = g(x);
    if (c == 0.0) return direct;

    RuleNd ball = ball_rule(cfg.dim, 1.0, cfg.quad_order, 2 * cfg.quad_order);
    const double norm = cfg.kernel_normalization();
    Vec conv = Vec::Zero(direct.size());
    for (int i = 0; i < ball.size(); ++i) {
        const Vec& y = ball.nodes[i];
        double w = ball.weights[i] * unit_bump(y.squaredNorm()) / norm;
        if (w == 0.0) continue;
        conv += w * g(x - cfg.nu * y);
    }
    return (1.0 - c) * direct + c * conv;
}

double sup_error(const EuclideanMap& g, const MollifierConfig& cfg,
                 const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const auto& x : samples)
        worst = std::max(worst, (g(x) - mollify(g, cfg, x)).norm());
    return worst;
}

ModulusEstimate estimate_moduli(const EuclideanMap& f, const Box& window, int grid_per_axis,
                                const std::vector<double>& epsilons,
                                const std::vector<double>& radii) {
    const int d = window.dim();
    std::vector<Vec> xs;
    std::vector<int> idx(d, 0);
    for (;;) {
        Vec x(d);
        for (int i = 0; i < d; ++i)
            x[i] = window.lower[i] + window.width(i) * idx[i] / (grid_per_axis - 1);
        xs.push_back(x);
        int i = 0;
        for (; i < d; ++i) {
            if (++idx[i] < grid_per_axis) break;
            idx[i] = 0;
        }
        if (i == d) break;
    }
    const size_t pair_count = xs.size() * (xs.size() - 1) / 2;
    if (pair_count < 1000)
        throw UndersamplingError("estimate_moduli: fewer than 10^3 sample pairs");

    std::vector<Vec> ys(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);

    double spacing = 0.0;
    for (int i = 0; i < d; ++i) spacing = std::max(spacing, window.width(i) / (grid_per_axis - 1));

    // Displacement profile D(delta) = max image distance over pairs within delta,
    // tabulated on a ladder of distances.
    double max_dist = 0.0;
    for (int i = 0; i < d; ++i) max_dist += window.width(i) * window.width(i);
    max_dist = std::sqrt(max_dist);
    const int ladder_len = 256;
    std::vector<double> profile(ladder_len, 0.0);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) {
            double dx = (xs[i] - xs[j]).norm();
            double dy = (ys[i] - ys[j]).norm();
            int bucket = std::min(ladder_len - 1,
                                  static_cast<int>(std::floor(dx / max_dist * ladder_len)));
            profile[bucket] = std::max(profile[bucket], dy);
        }
    // Running maximum turns the bucket table into a monotone profile.
    for (int i = 1; i < ladder_len; ++i) profile[i] = std::max(profile[i], profile[i - 1]);

    ModulusEstimate est;
    est.grid_spacing = spacing;
    est.epsilons = epsilons;
    for (double eps : epsilons) {
        double best = 0.0;
        for (int i = 0; i < ladder_len; ++i) {
            double delta = (i + 1) * max_dist / ladder_len;
            if (profile[i] <= eps) best = delta;
            else break;
        }
        // Deflate by one spacing so unsampled in-between pairs stay covered.
        est.delta_hat.push_back(std::max(0.0, best - spacing));
    }
    for (size_t i = 1; i < est.delta_hat.size(); ++i)
        est.delta_hat[i] = std::max(est.delta_hat[i], est.delta_hat[i - 1]);

    est.radii = radii;
    for (double R : radii) {
        double worst = 0.0;
        // Preimage diameters of R-balls centered at sampled image points.
        for (size_t c = 0; c < ys.size(); c += std::max<size_t>(1, ys.size() / 64)) {
            double diam = 0.0;
            std::vector<size_t> inside;
            for (size_t i = 0; i < ys.size(); ++i)
                if ((ys[i] - ys[c]).norm() <= R) inside.push_back(i);
            for (size_t a = 0; a < inside.size(); ++a)
                for (size_t b = a + 1; b < inside.size(); ++b)
                    diam = std::max(diam, (xs[inside[a]] - xs[inside[b]]).norm());
            worst = std::max(worst, diam);
        }
        est.properness_hat.push_back(worst);
    }
    for (size_t i = 1; i < est.properness_hat.size(); ++i)
        est.properness_hat[i] = std::max(est.properness_hat[i], est.properness_hat[i - 1]);
    return est;
}

}  // namespace plb
