#pragma once

// Templated moving-frame calculus. All quantities are frame coefficients in
// the structure's smooth adapted frame e_1..e_m at one point, computed at any
// Scalar level so that one more Dual level differentiates them again.
//
//   brackets     c(a,b,k)   = <[e_a, e_b], e_k>_f
//   connection   gamma(k,i,j) = omega_ij(e_k) = <nabla_{e_k} e_i, e_j>_f
//                            = ( c(k,i,j) - c(k,j,i) - c(i,j,k) ) / 2    (Koszul)
//
// Row vector convention: nabla_X e_i = sum_j omega_ij(X) e_j.

#include <acsphere/core/derivative.hpp>
#include <acsphere/core/forms.hpp>
#include <acsphere/core/matrix.hpp>
#include <acsphere/sphere/atlas.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsphere::conn {

using sphere::Chart;

inline constexpr double kOrthonormalTol = 1e-8;

template <typename T>
struct FrameData {
    std::size_t m = 0;
    Mat<T> e;              // frame columns, chart basis
    Mat<T> g;              // g_f, chart basis
    std::vector<T> c;      // m^3 bracket coefficients
    std::vector<T> gamma;  // m^3 connection coefficients

    const T& bracket(std::size_t a, std::size_t b, std::size_t k) const { return c[(a * m + b) * m + k]; }
    const T& conn(std::size_t k, std::size_t i, std::size_t j) const { return gamma[(k * m + i) * m + j]; }
};

/// Natural frame index of position `o` in the odd-then-even ordering
/// (e_1, e_3, ..., e_{2n-1}, e_2, e_4, ..., e_{2n}), 0-based.
inline std::size_t block_to_natural(std::size_t o, std::size_t n) { return o < n ? 2 * o : 2 * (o - n) + 1; }

template <Scalar T, typename S>
FrameData<T> frame_data(const S& s, Chart chart, const Vec<T>& u) {
    FrameData<T> fd;
    fd.m = u.size();
    const std::size_t m = fd.m;
    fd.e = s.frame(chart, u);
    fd.g = s.g_f(chart, u);

    const double gram = max_abs(values(fd.e.transpose() * fd.g * fd.e) - Mat<double>::identity(m));
    if (!(gram <= kOrthonormalTol))
        throw std::domain_error("connection: frame is not orthonormal for g_f (residual " + std::to_string(gram) + ")");

    // D_{e_a} E, the chart derivative of every frame column along e_a
    std::vector<Mat<T>> de;
    de.reserve(m);
    for (std::size_t a = 0; a < m; ++a) de.push_back(tangent_part(s.frame(chart, seed(u, fd.e.col(a)))));

    fd.c.assign(m * m * m, T(0.0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            Vec<T> br(m);
            for (std::size_t i = 0; i < m; ++i) br[i] = de[a](i, b) - de[b](i, a);
            const Vec<T> gbr = fd.g * br;
            for (std::size_t k = 0; k < m; ++k) {
                T v(0.0);
                for (std::size_t i = 0; i < m; ++i) v += gbr[i] * fd.e(i, k);
                fd.c[(a * m + b) * m + k] = v;
                fd.c[(b * m + a) * m + k] = -v;
            }
        }

    fd.gamma.assign(m * m * m, T(0.0));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                fd.gamma[(k * m + i) * m + j] = 0.5 * (fd.bracket(k, i, j) - fd.bracket(k, j, i) - fd.bracket(i, j, k));
    return fd;
}

/// omega as an m x m matrix of 1-forms in the odd-then-even ordering.
template <typename T>
MatrixForm<T> omega_form(const FrameData<T>& fd) {
    const std::size_t m = fd.m, n = m / 2;
    MatrixForm<T> w(m, m, 1, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t i = block_to_natural(r, n), j = block_to_natural(c, n);
            FormCoeffs<T> f(1, m);
            for (std::size_t k = 0; k < m; ++k) f.set(k, fd.conn(k, i, j));
            w(r, c) = f;
        }
    return w;
}

template <typename T>
std::vector<FormCoeffs<T>> flatten(const MatrixForm<T>& mf) {
    std::vector<FormCoeffs<T>> out;
    out.reserve(mf.rows() * mf.cols());
    for (std::size_t i = 0; i < mf.rows(); ++i)
        for (std::size_t j = 0; j < mf.cols(); ++j) out.push_back(mf(i, j));
    return out;
}

template <typename T>
MatrixForm<T> unflatten(const std::vector<FormCoeffs<T>>& v, std::size_t rows, std::size_t cols) {
    MatrixForm<T> mf(rows, cols, v.front().degree(), v.front().dim());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) mf(i, j) = v[i * cols + j];
    return mf;
}

template <typename T>
FormCoeffs<T> tangent_part(const FormCoeffs<Dual<T>>& f) {
    FormCoeffs<T> r(f.degree(), f.dim());
    auto& d = r.raw();  // antisymmetry is inherited entrywise
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = f.data()[k].eps;
    return r;
}

/// Exterior derivative of a list of p-forms (p = 1 or 2) given as a field of
/// frame coefficients. `field(chart, u)` must accept Vec<U> for U = T and
/// U = Dual<T> and return std::vector<FormCoeffs<U>>; `at_point` is its value
/// at u (already computed by the caller).
///
///   p = 1:  da(a,b)   = e_a a_b - e_b a_a - a([e_a,e_b])
///   p = 2:  db(a,b,c) = e_a b_bc - e_b b_ac + e_c b_ab
///                       - b([e_a,e_b],e_c) + b([e_a,e_c],e_b) - b([e_b,e_c],e_a)
template <Scalar T, typename Field>
std::vector<FormCoeffs<T>> exterior_derivative(const FrameData<T>& fd, Chart chart, const Vec<T>& u,
                                               const std::vector<FormCoeffs<T>>& at_point, const Field& field) {
    const std::size_t m = fd.m;
    if (at_point.empty()) return {};
    const int p = at_point.front().degree();
    if (p != 1 && p != 2) throw std::invalid_argument("exterior_derivative: only 1- and 2-forms are supported");

    // deriv[a][q] = e_a applied to the coefficients of form q
    std::vector<std::vector<FormCoeffs<T>>> deriv(m);
    for (std::size_t a = 0; a < m; ++a) {
        auto shifted = field(chart, seed(u, fd.e.col(a)));
        deriv[a].reserve(shifted.size());
        for (const auto& f : shifted) deriv[a].push_back(tangent_part(f));
    }

    std::vector<FormCoeffs<T>> out;
    out.reserve(at_point.size());
    for (std::size_t q = 0; q < at_point.size(); ++q) {
        const auto& f = at_point[q];
        FormCoeffs<T> d(p + 1, m);
        if (p == 1) {
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    T v = deriv[a][q](b) - deriv[b][q](a);
                    for (std::size_t k = 0; k < m; ++k) v -= fd.bracket(a, b, k) * f(k);
                    d.set(a, b, v);
                }
        } else {
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b)
                    for (std::size_t c = b + 1; c < m; ++c) {
                        T v = deriv[a][q](b, c) - deriv[b][q](a, c) + deriv[c][q](a, b);
                        for (std::size_t k = 0; k < m; ++k)
                            v += -fd.bracket(a, b, k) * f(k, c) + fd.bracket(a, c, k) * f(k, b) -
                                 fd.bracket(b, c, k) * f(k, a);
                        d.set(a, b, c, v);
                    }
        }
        out.push_back(std::move(d));
    }
    return out;
}

template <typename T>
struct CurvatureData {
    FrameData<T> frame;
    MatrixForm<T> omega;        // 1-forms, odd-then-even
    MatrixForm<T> d_omega;      // 2-forms
    MatrixForm<T> omega_omega;  // omega ^ omega
    MatrixForm<T> curvature;    // d omega - omega ^ omega
};

template <Scalar T, typename S>
CurvatureData<T> curvature_data(const S& s, Chart chart, const Vec<T>& u) {
    CurvatureData<T> out;
    out.frame = frame_data(s, chart, u);
    out.omega = omega_form(out.frame);
    const std::size_t m = out.frame.m;
    auto omega_field = [&s](Chart c, const auto& uu) { return flatten(omega_form(frame_data(s, c, uu))); };
    out.d_omega = unflatten(exterior_derivative(out.frame, chart, u, flatten(out.omega), omega_field), m, m);
    out.omega_omega = matrix_form_product(out.omega, out.omega);
    out.curvature = out.d_omega - out.omega_omega;
    return out;
}

/// J0 = [[0, -I], [I, 0]] in the odd-then-even ordering.
inline Mat<double> j0_matrix(std::size_t n) {
    Mat<double> j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = -1.0;
        j(n + i, i) = 1.0;
    }
    return j;
}

/// tr(Omega J0) + tr(omega ^ omega J0).
template <typename T>
FormCoeffs<T> sigma_from(const MatrixForm<T>& curvature, const MatrixForm<T>& omega_omega) {
    const std::size_t m = curvature.rows();
    const auto j0 = MatrixForm<T>::constant(j0_matrix(m / 2), curvature.dim());
    return trace(matrix_form_product(curvature, j0)) + trace(matrix_form_product(omega_omega, j0));
}

template <Scalar T, typename S>
FormCoeffs<T> sigma_at(const S& s, Chart chart, const Vec<T>& u) {
    const auto cd = curvature_data(s, chart, u);
    return sigma_from(cd.curvature, cd.omega_omega);
}

// ---------------------------------------------------------------------------
// complexified connection on T^{(1,0)}, Z_i = e_{2i-1} - sqrt(-1) e_{2i}

template <typename T>
struct PsiParts {
    MatrixForm<T> re, im;          // psi = (A + D + i(B - C)) / 2
    MatrixForm<T> off_re, off_im;  // (A - D - i(B + C)) / 2
};

template <typename T>
PsiParts<T> psi_from_omega(const MatrixForm<T>& omega) {
    const std::size_t n = omega.rows() / 2;
    const auto a = omega.block(0, 0, n, n), b = omega.block(0, n, n, n);
    const auto c = omega.block(n, 0, n, n), d = omega.block(n, n, n, n);
    PsiParts<T> out;
    out.re = 0.5 * (a + d);
    out.im = 0.5 * (b - c);
    out.off_re = 0.5 * (a - d);
    out.off_im = -0.5 * (b + c);
    return out;
}

/// Real and imaginary parts of sum_i Psi_i^i, Psi = d psi - psi ^ psi, with
/// d psi taken from the psi field itself (not from Omega).
template <Scalar T, typename S>
std::pair<FormCoeffs<T>, FormCoeffs<T>> psi_trace_curvature(const S& s, Chart chart, const Vec<T>& u) {
    const auto fd = frame_data(s, chart, u);
    const std::size_t m = fd.m, n = m / 2;
    const auto psi = psi_from_omega(omega_form(fd));
    std::vector<FormCoeffs<T>> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(psi.re(i, i));
    for (std::size_t i = 0; i < n; ++i) diag.push_back(psi.im(i, i));
    auto diag_field = [&s, n](Chart c, const auto& uu) {
        const auto p = psi_from_omega(omega_form(frame_data(s, c, uu)));
        using F = std::decay_t<decltype(p.re(0, 0))>;
        std::vector<F> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(p.re(i, i));
        for (std::size_t i = 0; i < n; ++i) v.push_back(p.im(i, i));
        return v;
    };
    const auto d = exterior_derivative(fd, chart, u, diag, diag_field);
    FormCoeffs<T> re(2, m), im(2, m);
    for (std::size_t i = 0; i < n; ++i) {
        re += d[i];
        im += d[n + i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            re -= wedge(psi.re(i, j), psi.re(j, i)) - wedge(psi.im(i, j), psi.im(j, i));
            im -= wedge(psi.re(i, j), psi.im(j, i)) + wedge(psi.im(i, j), psi.re(j, i));
        }
    return {re, im};
}

}  // namespace acsphere::conn
