#pragma once

#include <acsphere/sphere/atlas.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace acsphere::sphere {

/// Deterministic uniform points on S^m: normalized Gaussian vectors from a
/// seeded mt19937_64, mapped to the chart with |u| <= 1.
inline std::vector<Point> sample_sphere(std::size_t m, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(count);
    while (out.size() < count) {
        Vec<double> x(m + 1);
        for (auto& xi : x) xi = gauss(rng);
        const double r = norm(x);
        if (r < 1e-8) continue;
        for (auto& xi : x) xi /= r;
        out.push_back(chart_point(x));
    }
    return out;
}

/// Uniform points on S^m restricted to the North chart ball |u| <= radius
/// (rejection sampling on the same stream).
inline std::vector<Point> sample_north_ball(std::size_t m, std::size_t count, std::uint64_t seed, double radius) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(count);
    // z threshold: |u|^2 = (1+z)/(1-z) <= R^2  <=>  z <= (R^2-1)/(R^2+1)
    const double zmax = (radius * radius - 1.0) / (radius * radius + 1.0);
    while (out.size() < count) {
        Vec<double> x(m + 1);
        for (auto& xi : x) xi = gauss(rng);
        const double r = norm(x);
        if (r < 1e-8) continue;
        for (auto& xi : x) xi /= r;
        if (x.back() > zmax) continue;
        Point p{Chart::North, Vec<double>(m)};
        for (std::size_t i = 0; i < m; ++i) p.u[i] = x[i] / (1.0 - x.back());
        out.push_back(p);
    }
    return out;
}

/// Seeded standard-normal vectors (test directions).
inline std::vector<Vec<double>> sample_vectors(std::size_t m, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec<double>> out(count, Vec<double>(m));
    for (auto& v : out)
        for (auto& x : v) x = gauss(rng);
    return out;
}

}  // namespace acsphere::sphere
