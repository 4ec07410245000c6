#pragma once

#include <acsphere/sphere/atlas.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace acsphere::sphere {

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights on [-1, 1] by Newton iteration on P_n.
inline GaussLegendreRule gauss_legendre(int n) {
    if (n <= 0) throw std::invalid_argument("gauss_legendre: order must be positive");
    GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Evaluate f(i) for i in [0, count) on up to `workers` threads; results are
/// stored by index so any reduction over them is order-deterministic.
template <typename F>
std::vector<double> parallel_map(std::size_t count, const F& f, unsigned workers = std::thread::hardware_concurrency()) {
    std::vector<double> out(count);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
        });
    pool.clear();
    return out;
}

/// Integral over S^2 of a density against the round area form.
///
/// Product rule in embedded polar coordinates: `order` Gauss-Legendre nodes in
/// z = cos(theta) times 2*order equispaced azimuths. The integrand receives a
/// chart Point (North for z <= 0, South otherwise), never a pole of its chart.
template <typename Integrand>
double quadrature_s2(const Integrand& integrand, int order, unsigned workers = 1) {
    if (order <= 0) throw std::invalid_argument("quadrature_s2: order must be positive");
    const auto rule = gauss_legendre(order);
    const std::size_t n_phi = 2 * static_cast<std::size_t>(order);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);
    const std::size_t total = rule.nodes.size() * n_phi;
    auto vals = parallel_map(
        total,
        [&](std::size_t idx) {
            const std::size_t i = idx / n_phi, j = idx % n_phi;
            const double z = rule.nodes[i];
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            // half-step offset keeps azimuths off the coordinate axes
            const double phi = (static_cast<double>(j) + 0.5) * dphi;
            const Vec<double> x{rho * std::cos(phi), rho * std::sin(phi), z};
            return rule.weights[i] * dphi * static_cast<double>(integrand(chart_point(x)));
        },
        workers);
    double sum = 0.0;
    for (double v : vals) sum += v;
    return sum;
}

/// Dimension-checked variant for callers that carry the sphere dimension.
template <typename Integrand>
double quadrature_s2(std::size_t sphere_dim, const Integrand& integrand, int order, unsigned workers = 1) {
    if (sphere_dim != 2)
        throw std::invalid_argument("quadrature_s2: only S^2 is supported (got dimension " +
                                    std::to_string(sphere_dim) + ")");
    return quadrature_s2(integrand, order, workers);
}

}  // namespace acsphere::sphere
