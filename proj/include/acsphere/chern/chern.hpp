#pragma once

// First Chern form representatives, the two-form sigma = tr(Omega J0 + w^w J0),
// its expansion and nondegeneracy, and the Chern number on S^2.
//
//   c1 = -sigma / (4 pi)                   (curvature route)
//   c1 = (i / 2 pi) sum_i Psi_i^i          (complexified route)
//
// ScalarTwoForm entries are values on pairs of natural adapted-frame vectors.

#include <acsphere/connection/connection.hpp>
#include <acsphere/connection/frame_calculus.hpp>
#include <acsphere/core/forms.hpp>
#include <acsphere/core/matrix.hpp>
#include <acsphere/sphere/atlas.hpp>
#include <acsphere/sphere/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsphere::chern {

using conn::ConnectionMatrix;
using conn::CurvatureMatrix;
using sphere::Point;

inline constexpr double kImagTol = 1e-9;
inline constexpr double kPfaffianTol = 1e-9;
inline constexpr double kPreconditionTol = 1e-8;

struct ScalarTwoForm {
    Point p;
    Mat<double> coeffs;

    double operator()(std::size_t k, std::size_t l) const { return coeffs(k, l); }
    /// Value on two vectors given in frame components.
    double on(const Vec<double>& x, const Vec<double>& y) const { return dot(x, coeffs * y); }
};

inline ScalarTwoForm to_scalar(const Point& p, const FormCoeffs<double>& f) {
    return {p, f.as_matrix()};
}

inline ScalarTwoForm sigma_form(const CurvatureMatrix& curv, const ConnectionMatrix& c) {
    if (curv.p.chart != c.p.chart || max_abs(curv.p.u - c.p.u) != 0.0 ||
        max_abs(curv.frame.vectors - c.frame.vectors) > 1e-12)
        throw std::invalid_argument("sigma_form: curvature and connection are in different frames");
    return to_scalar(curv.p, conn::sigma_from(curv.Omega, matrix_form_product(c.omega, c.omega)));
}
inline ScalarTwoForm sigma_form(const CurvatureMatrix& curv) {
    return to_scalar(curv.p, conn::sigma_from(curv.Omega, curv.omega_omega));
}

template <typename S>
ScalarTwoForm sigma_form(const S& s, const Point& p) {
    return sigma_form(conn::curvature_matrix(s, p));
}

inline ScalarTwoForm chern_form(const CurvatureMatrix& curv) {
    auto sig = sigma_form(curv);
    sig.coeffs *= -1.0 / (4.0 * std::numbers::pi);
    return sig;
}

template <typename S>
ScalarTwoForm chern_form(const S& s, const Point& p) {
    return chern_form(conn::curvature_matrix(s, p));
}

struct PsiChern {
    ScalarTwoForm c1;      // real part of (i/2pi) sum Psi_i^i
    double imag_residue;   // max |imaginary part|
    double psi_wedge_psi;  // max |sum_ij psi_i^j ^ psi_j^i|
};

/// (i/2pi) sum Psi_i^i = (-Im + i Re)(sum Psi_i^i) / 2pi. Throws when the
/// imaginary residue exceeds kImagTol.
template <typename S>
PsiChern chern_form_psi(const S& s, const Point& p) {
    acs::require_domain(s, p);
    const auto cc = conn::complexified_connection(s, p);
    const double k = 1.0 / (2.0 * std::numbers::pi);
    PsiChern out;
    out.c1 = {p, cc.trace_im.as_matrix() * (-k)};
    out.imag_residue = k * max_abs(cc.trace_re);
    // sum_ij psi_i^j ^ psi_j^i, real and imaginary parts
    const std::size_t n = cc.psi.re.rows(), m = cc.psi.re.dim();
    FormCoeffs<double> re(2, m), im(2, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            re += wedge(cc.psi.re(i, j), cc.psi.re(j, i)) - wedge(cc.psi.im(i, j), cc.psi.im(j, i));
            im += wedge(cc.psi.re(i, j), cc.psi.im(j, i)) + wedge(cc.psi.im(i, j), cc.psi.re(j, i));
        }
    out.psi_wedge_psi = std::max(max_abs(re), max_abs(im));
    if (!(out.imag_residue <= kImagTol))
        throw std::domain_error("chern_form_psi: imaginary residue " + std::to_string(out.imag_residue) +
                                " (sign convention mismatch)");
    return out;
}

// ---------------------------------------------------------------------------
// integrable-case identities

struct Applicable {
    double residual = 0.0;
    bool applicable = true;
    double defect = 0.0;  // the precondition measure
};

/// tr(w^w J0) - tr[(B+C) ^ J(B+C)^t], max coefficient. Pure algebra: J is
/// the structure in the frame of omega's form slots.
inline double trace_identity_residual(const MatrixForm<double>& omega, const Mat<double>& j_frame) {
    const std::size_t m = omega.rows(), n = m / 2;
    const auto lhs =
        trace(matrix_form_product(matrix_form_product(omega, omega), MatrixForm<double>::constant(conn::j0_matrix(n), m)));
    const auto b = conn::blocks(omega);
    const auto bc = b.B + b.C;
    const auto rhs = trace(matrix_form_product(bc, conn::j_action(bc, j_frame).transpose()));
    return max_abs(lhs - rhs);
}

template <typename S>
Applicable trace_identity_check(const S& s, const ConnectionMatrix& c) {
    Applicable out;
    const auto b = conn::blocks(c);
    out.defect = max_abs(conn::integrability_defect(s, b, c.frame));
    out.applicable = out.defect <= kPreconditionTol;
    out.residual = trace_identity_residual(c.omega, conn::j_in_frame(s, c.frame));
    return out;
}

template <typename S>
Applicable trace_identity_check(const S& s, const Point& p) {
    return trace_identity_check(s, conn::connection_matrix(s, p));
}

/// max |J^T g J - g| in the chart basis.
template <typename S>
double round_orthogonality(const S& s, const Point& p) {
    const Mat<double> g = s.template g<double>(p.chart, p.u), j = s.template j<double>(p.chart, p.u);
    return max_abs(j.transpose() * g * j - g) / std::max(1.0, max_abs(g));
}

struct Expansion : Applicable {
    double sigma_xjx = 0.0;  // sigma(X, JX)
    double expansion = 0.0;  // right-hand side
    double norm2 = 0.0;      // g_f(X, X)
};

/// sigma(X, JX) against
///   -sum 2(w^{2i-1}(X)^2 + w^{2i}(X)^2) - sum_ij [(w_{2i-1}^{2j} + w_{2i}^{2j-1})(X)]^2
///                                      - sum_ij [(w_{2i-1}^{2j-1} - w_{2i}^{2j})(X)]^2.
/// X is in the chart basis.
template <typename S>
Expansion sigma_expansion_check(const S& s, const CurvatureMatrix& curv, const Vec<double>& x_chart) {
    const Point& p = curv.p;
    Expansion out;
    const auto b = conn::blocks(curv.omega);
    out.defect = std::max(max_abs(conn::integrability_defect(s, b, curv.frame)), round_orthogonality(s, p));
    out.applicable = out.defect <= kPreconditionTol;

    const std::size_t m = curv.omega.rows(), n = m / 2;
    const Vec<double> x = inverse(curv.frame.vectors) * x_chart;
    const Vec<double> jx = conn::j_in_frame(s, curv.frame) * x;
    out.sigma_xjx = sigma_form(curv).on(x, jx);
    out.norm2 = dot(x, x);

    auto w = [&](std::size_t i, std::size_t j) {
        double v = 0.0;
        for (std::size_t k = 0; k < m; ++k) v += curv.data.conn(k, i, j) * x[k];
        return v;
    };
    double rhs = -2.0 * out.norm2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double t1 = w(2 * i, 2 * j + 1) + w(2 * i + 1, 2 * j);
            const double t2 = w(2 * i, 2 * j) - w(2 * i + 1, 2 * j + 1);
            rhs -= t1 * t1 + t2 * t2;
        }
    out.expansion = rhs;
    out.residual = std::abs(out.sigma_xjx - rhs);
    return out;
}

struct Nondegeneracy {
    double pfaffian = 0.0;
    bool nondegenerate = false;
};

inline Nondegeneracy nondegeneracy(const ScalarTwoForm& sigma) {
    const double pf = pfaffian(sigma.coeffs);
    return {pf, std::abs(pf) > kPfaffianTol};
}

// ---------------------------------------------------------------------------
// closedness

/// d of a scalar 2-form field. `field(chart, u)` returns FormCoeffs at any
/// Scalar level in the structure's adapted frame.
template <typename S, typename Field>
FormCoeffs<double> exterior_derivative_2form(const S& s, const Point& p, const Field& field) {
    acs::require_domain(s, p);
    const auto fd = conn::frame_data(s, p.chart, p.u);
    const std::vector<FormCoeffs<double>> at{field(p.chart, p.u)};
    auto wrapped = [&field](sphere::Chart c, const auto& uu) {
        using F = decltype(field(c, uu));
        return std::vector<F>{field(c, uu)};
    };
    return conn::exterior_derivative(fd, p.chart, p.u, at, wrapped).front();
}

template <typename S>
FormCoeffs<double> d_sigma(const S& s, const Point& p) {
    return exterior_derivative_2form(s, p, [&s](sphere::Chart c, const auto& uu) { return conn::sigma_at(s, c, uu); });
}

/// d of c1 through the complexified route, -Im(sum Psi_i^i) / 2pi.
template <typename S>
FormCoeffs<double> d_chern_psi(const S& s, const Point& p) {
    return exterior_derivative_2form(s, p, [&s](sphere::Chart c, const auto& uu) {
        auto f = conn::psi_trace_curvature(s, c, uu).second;
        f *= -1.0 / (2.0 * std::numbers::pi);
        return f;
    });
}

// ---------------------------------------------------------------------------
// Chern number

/// c1(e1, e2) times the g_f area density relative to the round area form.
template <typename S>
double chern_density(const S& s, const Point& p) {
    const double c12 = chern_form(s, p)(0, 1);
    const Mat<double> gf = s.template g_f<double>(p.chart, p.u), g = s.template g<double>(p.chart, p.u);
    const double det_f = gf(0, 0) * gf(1, 1) - gf(0, 1) * gf(1, 0);
    const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    return c12 * std::sqrt(det_f / det);
}

template <typename S>
double chern_number_s2(const S& s, int order, unsigned workers = 1) {
    return sphere::quadrature_s2(s.dim(), [&s](const Point& p) { return chern_density(s, p); }, order, workers);
}

}  // namespace acsphere::chern
