#pragma once

// Almost complex structure fields J(p), evaluated as matrices in the chart
// basis d/du_1..d/du_m at any Scalar level (double or nested Dual).
//
// Every field type provides
//   std::size_t dim() const;
//   bool contains(const sphere::Point&) const;   // chart domain
//   template <Scalar T> Mat<T> operator()(sphere::Chart, const Vec<T>&) const;
//
// Octonion multiplication table (imaginary units e1..e7), e_a e_b = e_c for
// each cyclic triple (a, b, c) below, and e_b e_a = -e_c:
//
//   (1,2,3) (1,4,5) (2,4,6) (3,4,7) (1,7,6) (2,5,7) (3,6,5)
//
// The cross product on R^7 is x * y = Im(xy); the S^6 structure is
// J_p(X) = p * X for X tangent at p.

#include <acsphere/acs/polynomial.hpp>
#include <acsphere/core/derivative.hpp>
#include <acsphere/core/dual.hpp>
#include <acsphere/core/matrix.hpp>
#include <acsphere/sphere/atlas.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acsphere::acs {

using sphere::Chart;
using sphere::Point;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr std::array<std::array<int, 3>, 7> kOctonionTriples{{
    {1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {1, 7, 6}, {2, 5, 7}, {3, 6, 5},
}};

/// Structure constants eps[a][b][c] of the 7D cross product (0-based).
inline const std::array<std::array<std::array<double, 7>, 7>, 7>& octonion_structure_constants() {
    static const auto table = [] {
        std::array<std::array<std::array<double, 7>, 7>, 7> e{};
        for (const auto& t : kOctonionTriples) {
            const int cyc[3][3] = {{t[0], t[1], t[2]}, {t[1], t[2], t[0]}, {t[2], t[0], t[1]}};
            for (const auto& c : cyc) {
                e[c[0] - 1][c[1] - 1][c[2] - 1] = 1.0;
                e[c[1] - 1][c[0] - 1][c[2] - 1] = -1.0;
            }
        }
        return e;
    }();
    return table;
}

/// x * y in R^7.
template <typename T>
Vec<T> cross7(const Vec<T>& x, const Vec<T>& y) {
    const auto& eps = octonion_structure_constants();
    Vec<T> r(7, T(0.0));
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c)
                if (eps[a][b][c] != 0.0) r[c] += eps[a][b][c] * (x[a] * y[b]);
    return r;
}

/// x * y in R^3.
template <typename T>
Vec<T> cross3(const Vec<T>& x, const Vec<T>& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

/// Matrix of X -> p * X in R^{m+1}, pulled back to the chart basis:
/// (1/s) Dphi^T [p*] Dphi, exact because the round metric is s * I.
template <typename T, typename Cross>
Mat<T> pulled_back_cross(Chart c, const Vec<T>& u, double sign, const Cross& cross) {
    const std::size_t m = u.size();
    const Vec<T> p = sphere::embed(c, u);
    const Mat<T> d = sphere::embed_jacobian(c, u);
    const T inv_s = 1.0 / sphere::round_conformal_factor(u);
    Mat<T> j(m, m);
    for (std::size_t col = 0; col < m; ++col) {
        const Vec<T> img = cross(p, d.col(col));
        for (std::size_t row = 0; row < m; ++row) {
            T acc(0.0);
            for (std::size_t k = 0; k <= m; ++k) acc += d(k, row) * img[k];
            j(row, col) = sign * (acc * inv_s);
        }
    }
    return j;
}

// ---------------------------------------------------------------------------

/// The integrable structure on S^2: rotation by +90 degrees in the North
/// chart, [[0,-1],[1,0]]; the South chart sees [[0,1],[-1,0]] because the
/// chart transition reverses orientation. Globally it is X -> -p x X.
struct StandardS2Acs {
    std::size_t dim() const { return 2; }
    bool contains(const Point& p) const { return p.dim() == 2; }

    template <Scalar T>
    Mat<T> operator()(Chart c, const Vec<T>& u) const {
        if (u.size() != 2) throw DomainError("standard S^2 structure: expected 2 chart coordinates");
        const double s = c == Chart::North ? 1.0 : -1.0;
        Mat<T> j(2, 2);
        j(0, 1) = T(-s);
        j(1, 0) = T(s);
        return j;
    }
};

inline StandardS2Acs standard_acs_s2() { return {}; }

/// Round-orthogonal, non-integrable structure on S^6 from the octonion
/// cross product, X -> p * X.
struct OctonionicS6Acs {
    std::size_t dim() const { return 6; }
    bool contains(const Point& p) const { return p.dim() == 6; }

    template <Scalar T>
    Mat<T> operator()(Chart c, const Vec<T>& u) const {
        if (u.size() != 6) throw DomainError("octonionic S^6 structure: expected 6 chart coordinates");
        return pulled_back_cross(c, u, 1.0, [](const Vec<T>& a, const Vec<T>& b) { return cross7(a, b); });
    }
};

inline OctonionicS6Acs octonionic_acs_s6() { return {}; }

/// A constant matrix in one chart (flat self-tests and chart-local
/// structures). Domain: the given chart, |u| <= radius.
struct ConstantAcs {
    Mat<double> j;
    Chart chart = Chart::North;
    double radius = 1e300;

    std::size_t dim() const { return j.rows(); }
    bool contains(const Point& p) const {
        return p.chart == chart && p.dim() == dim() && sphere::squared_norm(p.u) <= radius * radius;
    }
    template <Scalar T>
    Mat<T> operator()(Chart /*c*/, const Vec<T>& /*u*/) const {
        return lift<T>(j);
    }
};

/// Standard complex structure J0 in natural pair order: e_{2i-1} -> e_{2i}.
inline Mat<double> standard_pairs(std::size_t m) {
    if (m % 2 != 0) throw std::invalid_argument("standard_pairs: odd dimension");
    Mat<double> j(m, m);
    for (std::size_t i = 0; i + 1 < m; i += 2) {
        j(i + 1, i) = 1.0;
        j(i, i + 1) = -1.0;
    }
    return j;
}

/// J given entrywise by polynomials in the chart coordinates (user-supplied
/// structure files). Domain: one chart, |u| <= radius.
struct PolynomialAcs {
    std::vector<std::vector<Polynomial>> entries;  // row-major m x m
    Chart chart = Chart::North;
    double radius = 2.0;

    std::size_t dim() const { return entries.size(); }
    bool contains(const Point& p) const {
        return p.chart == chart && p.dim() == dim() && sphere::squared_norm(p.u) <= radius * radius;
    }
    template <Scalar T>
    Mat<T> operator()(Chart /*c*/, const Vec<T>& u) const {
        const std::size_t m = dim();
        Mat<T> j(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) j(r, c) = entries[r][c](u);
        return j;
    }
};

// ---------------------------------------------------------------------------
// Deformations through the lambda normal form.

/// 2x2 block template [[l, -sqrt(1+l^2)], [sqrt(1+l^2), -l]] for each pair.
template <typename T>
Mat<T> normal_form_template(const Vec<T>& lambda) {
    const std::size_t n = lambda.size();
    Mat<T> t(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        using std::sqrt;
        const T s = sqrt(1.0 + lambda[i] * lambda[i]);
        t(2 * i, 2 * i) = lambda[i];
        t(2 * i, 2 * i + 1) = -s;
        t(2 * i + 1, 2 * i) = s;
        t(2 * i + 1, 2 * i + 1) = -lambda[i];
    }
    return t;
}

/// Round-orthonormal frame field: (1+|u|^2)/2 * d/du_i, then rotated by
/// Givens rotations in planes (k, k+1) with polynomial angles.
struct ConformalFrameField {
    std::vector<Polynomial> angles;

    template <Scalar T>
    Mat<T> operator()(Chart /*c*/, const Vec<T>& u) const {
        const std::size_t m = u.size();
        using std::sqrt;
        const T scale = 1.0 / sqrt(sphere::round_conformal_factor(u));
        Mat<T> f(m, m);
        for (std::size_t i = 0; i < m; ++i) f(i, i) = scale;
        for (std::size_t k = 0; k < angles.size() && k + 1 < m; ++k) {
            using std::cos;
            using std::sin;
            const T th = angles[k](u);
            const T c = cos(th), s = sin(th);
            for (std::size_t r = 0; r < m; ++r) {
                const T a = f(r, k), b = f(r, k + 1);
                f(r, k) = c * a - s * b;
                f(r, k + 1) = s * a + c * b;
            }
        }
        return f;
    }
};

/// Assembles J from lambda_i(u) and a round-orthonormal frame field Ebar(u):
/// J = Ebar * T(lambda) * Ebar^{-1}, with Ebar^{-1} = Ebar^T g.
template <typename FrameField, typename Metric>
struct DeformedAcs {
    std::vector<Polynomial> lambdas;
    FrameField frame;
    Metric metric;
    Chart chart = Chart::North;
    double radius = 2.0;
    bool global = false;  // true when lambda and frame are defined on all of S^m

    std::size_t dim() const { return 2 * lambdas.size(); }
    bool contains(const Point& p) const {
        if (p.dim() != dim()) return false;
        return global || (p.chart == chart && sphere::squared_norm(p.u) <= radius * radius);
    }
    template <Scalar T>
    Vec<T> lambda_values(const Vec<T>& u) const {
        Vec<T> l(lambdas.size());
        for (std::size_t i = 0; i < lambdas.size(); ++i) l[i] = lambdas[i](u);
        return l;
    }
    template <Scalar T>
    Mat<T> operator()(Chart c, const Vec<T>& u) const {
        const Mat<T> e = frame(c, u);
        const Mat<T> g = metric(c, u);
        return e * normal_form_template(lambda_values(u)) * (e.transpose() * g);
    }
};

template <typename FrameField, typename Metric>
DeformedAcs<FrameField, Metric> deformed_acs(std::vector<Polynomial> lambdas, FrameField frame, Metric metric,
                                             Chart chart = Chart::North, double radius = 2.0) {
    return DeformedAcs<FrameField, Metric>{std::move(lambdas), std::move(frame), std::move(metric), chart, radius, false};
}

}  // namespace acsphere::acs
