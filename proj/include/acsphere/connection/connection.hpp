#pragma once

// Point-level (double) connection API on top of frame_calculus.hpp.
//
// Index conventions:
//   - matrix rows/columns of omega, Omega, blocks: odd-then-even
//     (e_1, e_3, ..., e_{2n-1}, e_2, ..., e_{2n})
//   - form slots (the X in omega_ij(X)): natural frame order e_1, e_2, ...
//   - J acts on 1-forms by (J a)(X) = a(J X), so J omega^{2i-1} = -omega^{2i}

#include <acsphere/acs/hermitian.hpp>
#include <acsphere/acs/structure.hpp>
#include <acsphere/connection/frame_calculus.hpp>
#include <acsphere/core/derivative.hpp>
#include <acsphere/core/forms.hpp>
#include <acsphere/core/matrix.hpp>
#include <acsphere/sphere/atlas.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace acsphere::conn {

using acs::FrameAtPoint;
using sphere::Point;

inline constexpr double kAdaptedTol = 1e-8;

struct ConnectionMatrix {
    Point p;
    FrameAtPoint frame;               // natural order, g_f-orthonormal, adapted
    MatrixForm<double> omega;         // odd-then-even rows/columns
    FrameData<double> data;

    std::size_t n() const { return omega.rows() / 2; }
    /// omega_ij in natural indices.
    const FormCoeffs<double>& natural(std::size_t i, std::size_t j) const {
        const std::size_t h = n();
        auto pos = [h](std::size_t k) { return k % 2 == 0 ? k / 2 : h + k / 2; };
        return omega(pos(i), pos(j));
    }
};

template <typename S>
ConnectionMatrix connection_matrix(const S& s, const Point& p) {
    acs::require_domain(s, p);
    ConnectionMatrix out;
    out.p = p;
    out.data = frame_data(s, p.chart, p.u);
    out.frame = {p, out.data.e, acs::MetricTag::Hermitian, true};
    out.omega = omega_form(out.data);
    return out;
}

struct CurvatureMatrix {
    Point p;
    FrameAtPoint frame;
    MatrixForm<double> omega;
    MatrixForm<double> d_omega;
    MatrixForm<double> omega_omega;
    MatrixForm<double> Omega;
    FrameData<double> data;
};

template <typename S>
CurvatureMatrix curvature_matrix(const S& s, const Point& p) {
    acs::require_domain(s, p);
    auto cd = curvature_data(s, p.chart, p.u);
    CurvatureMatrix out;
    out.p = p;
    out.frame = {p, cd.frame.e, acs::MetricTag::Hermitian, true};
    out.omega = std::move(cd.omega);
    out.d_omega = std::move(cd.d_omega);
    out.omega_omega = std::move(cd.omega_omega);
    out.Omega = std::move(cd.curvature);
    out.data = std::move(cd.frame);
    return out;
}

/// Coframe element omega^k in natural order.
inline FormCoeffs<double> coframe(std::size_t m, std::size_t k) { return FormCoeffs<double>::coframe(m, k); }

/// max |Omega_k^l + omega^k ^ omega^l| over natural k, l (round metric check).
inline double constant_curvature_residual(const CurvatureMatrix& c) {
    const std::size_t m = c.Omega.rows(), n = m / 2;
    double r = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const std::size_t k = block_to_natural(a, n), l = block_to_natural(b, n);
            r = std::max(r, max_abs(c.Omega(a, b) + wedge(coframe(m, k), coframe(m, l))));
        }
    return r;
}

// ---------------------------------------------------------------------------
// blocks

struct Blocks {
    MatrixForm<double> A, B, C, D;
    std::size_t n() const { return A.rows(); }
};

inline Blocks blocks(const MatrixForm<double>& omega) {
    if (omega.rows() % 2 != 0 || omega.rows() != omega.cols())
        throw std::invalid_argument("blocks: connection matrix has odd dimension");
    const std::size_t n = omega.rows() / 2;
    return {omega.block(0, 0, n, n), omega.block(0, n, n, n), omega.block(n, 0, n, n), omega.block(n, n, n, n)};
}
inline Blocks blocks(const ConnectionMatrix& c) { return blocks(c.omega); }

inline MatrixForm<double> reassemble(const Blocks& b) {
    const std::size_t n = b.n();
    MatrixForm<double> w(2 * n, 2 * n, b.A.degree(), b.A.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            w(i, j) = b.A(i, j);
            w(i, n + j) = b.B(i, j);
            w(n + i, j) = b.C(i, j);
            w(n + i, n + j) = b.D(i, j);
        }
    return w;
}

/// max |omega + omega^t|.
inline double skew_residual(const MatrixForm<double>& w) { return max_abs(w + w.transpose()); }

// ---------------------------------------------------------------------------
// complexification, Z_i = e_{2i-1} - sqrt(-1) e_{2i}

struct ComplexConnection {
    PsiParts<double> psi;
    FormCoeffs<double> trace_re, trace_im;  // sum_i Psi_i^i; empty when built from blocks only
};

inline ComplexConnection complexify(const Blocks& b) {
    const auto omega = reassemble(b);
    return {psi_from_omega(omega), {}, {}};
}

template <typename S>
ComplexConnection complexified_connection(const S& s, const Point& p) {
    acs::require_domain(s, p);
    ComplexConnection out;
    out.psi = psi_from_omega(omega_form(frame_data(s, p.chart, p.u)));
    auto [re, im] = psi_trace_curvature(s, p.chart, p.u);
    out.trace_re = std::move(re);
    out.trace_im = std::move(im);
    return out;
}

/// max |psi_i^k + conj(psi_k^i)|.
inline double anti_hermitian_residual(const PsiParts<double>& psi) {
    return std::max(max_abs(psi.re + psi.re.transpose()), max_abs(psi.im - psi.im.transpose()));
}

// ---------------------------------------------------------------------------
// integrability

/// (J a)(e_k) = a(J e_k) for a 1-form given in natural frame slots, with J
/// in the adapted frame: J e_{2i-1} = e_{2i}, J e_{2i} = -e_{2i-1}.
inline FormCoeffs<double> j_action(const FormCoeffs<double>& a, const Mat<double>& j_frame) {
    a.require_degree(1);
    const std::size_t m = a.dim();
    FormCoeffs<double> r(1, m);
    for (std::size_t k = 0; k < m; ++k) {
        double v = 0.0;
        for (std::size_t i = 0; i < m; ++i) v += a(i) * j_frame(i, k);
        r.set(k, v);
    }
    return r;
}

inline MatrixForm<double> j_action(const MatrixForm<double>& mf, const Mat<double>& j_frame) {
    MatrixForm<double> r(mf.rows(), mf.cols(), 1, mf.dim());
    for (std::size_t i = 0; i < mf.rows(); ++i)
        for (std::size_t k = 0; k < mf.cols(); ++k) r(i, k) = j_action(mf(i, k), j_frame);
    return r;
}

/// J in the frame basis, E^{-1} J E.
template <typename S>
Mat<double> j_in_frame(const S& s, const FrameAtPoint& f) {
    return inverse(f.vectors) * s.template j<double>(f.p.chart, f.p.u) * f.vectors;
}

/// J(B + C) - (A - D). Zero iff J is integrable at p.
template <typename S>
MatrixForm<double> integrability_defect(const S& s, const Blocks& b, const FrameAtPoint& frame) {
    const Mat<double> jc = s.template j<double>(frame.p.chart, frame.p.u);
    if (!frame.adapted || acs::adaptedness_residual(frame.vectors, jc) > kAdaptedTol)
        throw std::domain_error("integrability_defect: frame is not J-adapted");
    const Mat<double> jf = j_in_frame(s, frame);
    return j_action(b.B + b.C, jf) - (b.A - b.D);
}

template <typename S>
MatrixForm<double> integrability_defect(const S& s, const Point& p) {
    const auto c = connection_matrix(s, p);
    return integrability_defect(s, blocks(c), c.frame);
}

template <typename S>
double defect_norm(const S& s, const Point& p) {
    return max_abs(integrability_defect(s, p));
}

/// Nijenhuis tensor with X, Y extended as constant chart fields:
///   N = (D_{JX} J) Y - (D_{JY} J) X + J (D_Y J) X - J (D_X J) Y.
template <typename S>
Vec<double> nijenhuis(const S& s, const Point& p, const Vec<double>& x, const Vec<double>& y) {
    acs::require_domain(s, p);
    auto jfield = [&s, &p](const auto& uu) { return s.j(p.chart, uu); };
    const Mat<double> j = s.template j<double>(p.chart, p.u);
    const Vec<double> jx = j * x, jy = j * y;
    const Mat<double> d_jx = directional_derivative(jfield, p.u, jx);
    const Mat<double> d_jy = directional_derivative(jfield, p.u, jy);
    const Mat<double> d_x = directional_derivative(jfield, p.u, x);
    const Mat<double> d_y = directional_derivative(jfield, p.u, y);
    return d_jx * y - d_jy * x + j * (d_y * x) - j * (d_x * y);
}

/// max over adapted-frame pairs of |N(e_a, e_b)|_f.
template <typename S>
double nijenhuis_sup(const S& s, const Point& p) {
    const Mat<double> e = s.template frame<double>(p.chart, p.u);
    const Mat<double> gf = s.template g_f<double>(p.chart, p.u);
    double r = 0.0;
    for (std::size_t a = 0; a < e.cols(); ++a)
        for (std::size_t b = a + 1; b < e.cols(); ++b) {
            const Vec<double> nv = nijenhuis(s, p, e.col(a), e.col(b));
            r = std::max(r, std::sqrt(std::max(0.0, inner(gf, nv, nv))));
        }
    return r;
}

/// Torsion check: c(a,b,k) = gamma(a,b,k) - gamma(b,a,k), max residual.
inline double torsion_residual(const FrameData<double>& fd) {
    const std::size_t m = fd.m;
    double r = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k)
                r = std::max(r, std::abs(fd.bracket(a, b, k) - (fd.conn(a, b, k) - fd.conn(b, a, k))));
    return r;
}

}  // namespace acsphere::conn
