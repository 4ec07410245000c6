#pragma once

// Two stereographic charts on the unit sphere S^m in R^{m+1}.
//
//   North:  u -> (2u, |u|^2 - 1) / (|u|^2 + 1)   (u = 0 is the south pole)
//   South:  u -> (2u, 1 - |u|^2) / (|u|^2 + 1)   (u = 0 is the north pole)
//
// The transition between them is u -> u / |u|^2 in both directions. In both
// charts the round metric is 4 / (1 + |u|^2)^2 times the identity.

#include <acsphere/core/derivative.hpp>
#include <acsphere/core/matrix.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace acsphere::sphere {

enum class Chart { North, South };

inline std::string_view to_string(Chart c) { return c == Chart::North ? "north" : "south"; }

struct Point {
    Chart chart = Chart::North;
    Vec<double> u;

    std::size_t dim() const { return u.size(); }
};

/// Chart-overlap band kOverlapInner < |u| < kOverlapOuter for cross-chart tests.
inline constexpr double kOverlapInner = 0.25;
inline constexpr double kOverlapOuter = 4.0;

template <typename T>
T squared_norm(const Vec<T>& u) {
    T r(0.0);
    for (const auto& x : u) r += x * x;
    return r;
}

template <typename T>
Vec<T> embed(Chart chart, const Vec<T>& u) {
    const T r2 = squared_norm(u);
    const T den = r2 + 1.0;
    Vec<T> x(u.size() + 1);
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = 2.0 * u[i] / den;
    x.back() = chart == Chart::North ? (r2 - 1.0) / den : (1.0 - r2) / den;
    return x;
}

inline Vec<double> embed(const Point& p) { return embed(p.chart, p.u); }

/// Differential of the embedding: (m+1) x m, column i = d embed / d u_i.
template <typename T>
Mat<T> embed_jacobian(Chart chart, const Vec<T>& u) {
    const std::size_t m = u.size();
    const T r2 = squared_norm(u);
    const T den = r2 + 1.0;
    const T den2 = den * den;
    const double sgn = chart == Chart::North ? 1.0 : -1.0;
    Mat<T> d(m + 1, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            T v = -4.0 * u[k] * u[i] / den2;
            if (k == i) v += 2.0 / den;
            d(k, i) = v;
        }
        d(m, i) = sgn * 4.0 * u[i] / den2;
    }
    return d;
}

/// Conformal factor of the round metric, 4 / (1 + |u|^2)^2.
template <typename T>
T round_conformal_factor(const Vec<T>& u) {
    const T den = squared_norm(u) + 1.0;
    return 4.0 / (den * den);
}

template <typename T>
Mat<T> round_metric(Chart /*chart*/, const Vec<T>& u) {
    const std::size_t m = u.size();
    Mat<T> g(m, m);
    const T s = round_conformal_factor(u);
    for (std::size_t i = 0; i < m; ++i) g(i, i) = s;
    return g;
}

inline Mat<double> round_metric(const Point& p) { return round_metric(p.chart, p.u); }

/// Background metric fields usable as template parameters.
struct RoundMetric {
    template <Scalar T>
    Mat<T> operator()(Chart c, const Vec<T>& u) const { return round_metric(c, u); }
};

struct EuclideanMetric {
    template <Scalar T>
    Mat<T> operator()(Chart /*c*/, const Vec<T>& u) const { return Mat<T>::identity(u.size()); }
};

/// Swap charts: u -> u / |u|^2. The image of u = 0 is the missing pole.
inline Point transition(const Point& p) {
    const double r2 = squared_norm(p.u);
    if (r2 == 0.0) throw std::domain_error("transition: u = 0 maps to the pole missing from the other chart");
    Point q{p.chart == Chart::North ? Chart::South : Chart::North, p.u};
    for (auto& x : q.u) x /= r2;
    return q;
}

/// Jacobian of the transition map at p (chart coordinates of p to those of
/// transition(p)): d(u/|u|^2)/du = (I |u|^2 - 2 u u^T) / |u|^4.
inline Mat<double> transition_jacobian(const Point& p) {
    const std::size_t m = p.dim();
    const double r2 = squared_norm(p.u);
    if (r2 == 0.0) throw std::domain_error("transition_jacobian: u = 0");
    Mat<double> j(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) j(a, b) = ((a == b ? r2 : 0.0) - 2.0 * p.u[a] * p.u[b]) / (r2 * r2);
    return j;
}

/// Chart point for a unit vector x in R^{m+1}: North when x_last <= 0,
/// South otherwise, so |u| <= 1 always.
inline Point chart_point(const Vec<double>& x) {
    const std::size_t m = x.size() - 1;
    const double z = x.back();
    Point p;
    p.chart = z <= 0.0 ? Chart::North : Chart::South;
    const double den = p.chart == Chart::North ? 1.0 - z : 1.0 + z;
    p.u.resize(m);
    for (std::size_t i = 0; i < m; ++i) p.u[i] = x[i] / den;
    return p;
}

/// Express a point in the requested chart (transition if needed).
inline Point in_chart(const Point& p, Chart c) {
    return p.chart == c ? p : transition(p);
}

}  // namespace acsphere::sphere
