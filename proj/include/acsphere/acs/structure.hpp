#pragma once

// An almost complex structure together with its background metric <,>, the
// deformed Hermitian metric <,>_f = (<,> + <J.,J.>)/2 and a smooth J-adapted
// <,>_f-orthonormal frame field. Everything downstream (connection, curvature,
// Chern forms) consumes this bundle.

#include <acsphere/acs/fields.hpp>
#include <acsphere/core/matrix.hpp>
#include <acsphere/sphere/atlas.hpp>

#include <cmath>
#include <string>
#include <utility>

namespace acsphere::acs {

/// g_f = (g + J^T g J) / 2 in the chart basis.
template <typename T>
Mat<T> deformed_metric(const Mat<T>& g, const Mat<T>& j) {
    Mat<T> r = g + j.transpose() * g * j;
    r *= 0.5;
    return r;
}

/// Hermitian Gram-Schmidt: e_{2i-1} from coordinate vectors, e_{2i} = J e_{2i-1},
/// orthonormal for the J-invariant metric G. At each step the coordinate
/// vector with the largest relative residual is taken; the choice reads only
/// value parts, so every derivative level sees the same branch.
template <typename T>
Mat<T> hermitian_frame(const Mat<T>& g, const Mat<T>& j) {
    const std::size_t m = g.rows();
    if (m % 2 != 0) throw std::invalid_argument("hermitian_frame: odd dimension");
    std::vector<Vec<T>> frame;
    frame.reserve(m);
    auto residual = [&](std::size_t k) {
        Vec<T> r(m, T(0.0));
        r[k] = T(1.0);
        for (const auto& e : frame) {
            const T c = inner(g, r, e);
            for (std::size_t i = 0; i < m; ++i) r[i] -= c * e[i];
        }
        return r;
    };
    while (frame.size() < m) {
        std::size_t best = 0;
        double best_ratio = -1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const Vec<double> r = values(residual(k));
            const double ratio = std::sqrt(std::max(0.0, inner(values(g), r, r)) / value_of(g(k, k)));
            if (ratio > best_ratio + 1e-12) {
                best_ratio = ratio;
                best = k;
            }
        }
        if (best_ratio < 1e-8) throw std::domain_error("hermitian_frame: coordinate vectors do not span");
        Vec<T> e = residual(best);
        using std::sqrt;
        const T len = sqrt(inner(g, e, e));
        for (auto& x : e) x = x / len;
        frame.push_back(e);
        frame.push_back(j * e);
    }
    return Mat<T>::from_columns(frame);
}

template <typename Metric, typename Acs>
struct AlmostHermitian {
    std::string name;
    Metric metric;
    Acs acs;

    std::size_t dim() const { return acs.dim(); }
    std::size_t n() const { return acs.dim() / 2; }
    bool contains(const sphere::Point& p) const { return acs.contains(p); }

    /// Background metric <,> in the chart basis.
    template <Scalar T>
    Mat<T> g(Chart c, const Vec<T>& u) const { return metric(c, u); }

    template <Scalar T>
    Mat<T> j(Chart c, const Vec<T>& u) const { return acs(c, u); }

    template <Scalar T>
    Mat<T> g_f(Chart c, const Vec<T>& u) const { return deformed_metric(metric(c, u), acs(c, u)); }

    /// Smooth J-adapted g_f-orthonormal frame, columns in the chart basis,
    /// natural order e_1, e_2 = J e_1, e_3, e_4 = J e_3, ...
    template <Scalar T>
    Mat<T> frame(Chart c, const Vec<T>& u) const {
        const Mat<T> jm = acs(c, u);
        return hermitian_frame(deformed_metric(metric(c, u), jm), jm);
    }
};

template <typename Metric, typename Acs>
AlmostHermitian<Metric, Acs> make_structure(std::string name, Metric metric, Acs acs) {
    return {std::move(name), std::move(metric), std::move(acs)};
}

/// J-adapted round-orthonormal frame of an orthogonal structure, as a frame
/// field (base frame for deforming the octonionic structure).
template <typename Acs>
struct AdaptedFrameField {
    Acs acs;

    template <Scalar T>
    Mat<T> operator()(Chart c, const Vec<T>& u) const {
        return hermitian_frame(sphere::round_metric(c, u), acs(c, u));
    }
};

/// Throws DomainError when p is outside the structure's chart domain.
template <typename S>
void require_domain(const S& s, const sphere::Point& p) {
    if (!s.contains(p))
        throw DomainError("point outside the chart domain of '" + s.name + "' (chart " +
                          std::string(sphere::to_string(p.chart)) + ")");
}

}  // namespace acsphere::acs
