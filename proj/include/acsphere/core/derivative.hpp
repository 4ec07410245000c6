#pragma once

#include <acsphere/core/dual.hpp>
#include <acsphere/core/matrix.hpp>

#include <cstddef>
#include <stdexcept>
#include <type_traits>

namespace acsphere {

/// Seed u + eps*v for one more level of differentiation.
template <typename T>
Vec<Dual<T>> seed(const Vec<T>& u, const Vec<T>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("seed: point and direction lengths differ");
    Vec<Dual<T>> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = Dual<T>(u[i], v[i]);
    return r;
}

template <typename T> T tangent_part(const Dual<T>& x) { return x.eps; }
template <typename T> T value_part(const Dual<T>& x) { return x.val; }

template <typename T>
Mat<T> tangent_part(const Mat<Dual<T>>& m) {
    Mat<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eps;
    return r;
}
template <typename T>
Mat<T> value_part(const Mat<Dual<T>>& m) {
    Mat<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).val;
    return r;
}
template <typename T>
Vec<T> tangent_part(const Vec<Dual<T>>& v) {
    Vec<T> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].eps;
    return r;
}

/// Exact directional derivative of a scalar- or matrix-valued field at u
/// along v. `field` is a generic callable accepting Vec<S> for any Scalar S.
template <typename T, typename Field>
auto directional_derivative(const Field& field, const Vec<T>& u, const Vec<T>& v) {
    auto out = field(seed(u, v));
    return tangent_part(out);
}

/// Central finite difference. Test oracle only; the library differentiates
/// with duals.
template <typename Field>
auto central_difference(const Field& field, const Vec<double>& u, const Vec<double>& v, double h = 1e-5) {
    Vec<double> up = u, um = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
        up[i] += h * v[i];
        um[i] -= h * v[i];
    }
    auto fp = field(up);
    auto fm = field(um);
    if constexpr (std::is_same_v<decltype(fp), double>) {
        return (fp - fm) / (2.0 * h);
    } else {
        return (fp - fm) * (1.0 / (2.0 * h));
    }
}

}  // namespace acsphere
