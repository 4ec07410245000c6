#pragma once

#include <acsphere/acs/structure.hpp>
#include <acsphere/core/matrix.hpp>
#include <acsphere/sphere/atlas.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsphere::acs {

inline constexpr double kComplexTol = 1e-10;

enum class MetricTag { Round, Hermitian };

struct FrameAtPoint {
    sphere::Point p;
    Mat<double> vectors;  // columns in the chart basis
    MetricTag metric = MetricTag::Round;
    bool adapted = false;

    std::size_t dim() const { return vectors.cols(); }
    Vec<double> operator[](std::size_t k) const { return vectors.col(k); }
};

/// max |J^2 + I|.
inline double complex_residual(const Mat<double>& j) {
    return max_abs(j * j + Mat<double>::identity(j.rows()));
}

inline void require_complex(const Mat<double>& j, double tol = kComplexTol) {
    const double r = complex_residual(j);
    if (!(r <= tol * std::max(1.0, max_abs(j) * max_abs(j))))
        throw std::domain_error("J^2 != -I (residual " + std::to_string(r) + ")");
}

/// <,>_f in the chart basis at p; rejects J with J^2 != -I.
template <typename S>
Mat<double> hermitian_metric(const S& s, const sphere::Point& p) {
    require_domain(s, p);
    const Mat<double> j = s.template j<double>(p.chart, p.u);
    require_complex(j);
    return deformed_metric(s.template g<double>(p.chart, p.u), j);
}

/// Round-orthonormal frame of a metric in the chart basis: F = L^{-T} with
/// G = L L^T, so F^T G F = I.
inline Mat<double> orthonormal_frame(const Mat<double>& g) {
    return inverse(cholesky(g)).transpose();
}

struct PTensor {
    Mat<double> frame;    // round-orthonormal frame F (columns, chart basis)
    Mat<double> p_frame;  // P in that frame: symmetric, P^2 = (I + J^T J)/2
    Mat<double> p_chart;  // F P F^{-1}: the tensor in the chart basis
};

/// P with <PX, PY> = <X, Y>_f.
template <typename S>
PTensor p_tensor(const S& s, const sphere::Point& p) {
    require_domain(s, p);
    const Mat<double> g = s.template g<double>(p.chart, p.u);
    const Mat<double> j = s.template j<double>(p.chart, p.u);
    require_complex(j);
    const Mat<double> f = orthonormal_frame(g);
    const Mat<double> f_inv = inverse(f);
    const Mat<double> jf = f_inv * j * f;
    const Mat<double> gf_frame = deformed_metric(Mat<double>::identity(j.rows()), jf);
    PTensor out;
    out.frame = f;
    out.p_frame = spd_sqrt(gf_frame);
    out.p_chart = f * out.p_frame * f_inv;
    return out;
}

/// P J1 P^{-1}. J1 must be <,>_f-orthogonal: J1^T g_f J1 = g_f.
inline Mat<double> conjugate_acs(const Mat<double>& p_chart, const Mat<double>& j1, const Mat<double>& g_f,
                                 double tol = 1e-8) {
    require_complex(j1, 1e-9);
    const double orth = max_abs(j1.transpose() * g_f * j1 - g_f);
    if (!(orth <= tol * std::max(1.0, max_abs(g_f))))
        throw std::domain_error("conjugate_acs: J1 is not <,>_f-orthogonal (residual " + std::to_string(orth) + ")");
    return p_chart * j1 * inverse(p_chart);
}

// ---------------------------------------------------------------------------
// lambda normal form

struct NormalFormMatrix {
    Vec<double> lambda;    // n values, lambda_i >= 0, descending
    Mat<double> ebar;      // columns: ebar_1..ebar_2n in the input orthonormal basis
    Vec<double> mu;        // 2n values
    Mat<double> etilde;    // columns: etilde_1..etilde_2n
};

/// mu_{2i-1} = (1 + l^2 + l sqrt(1+l^2))^{1/2}, mu_{2i} = (1 + l^2 - l sqrt(1+l^2))^{1/2}.
inline Vec<double> mu_from_lambda(const Vec<double>& lambda) {
    Vec<double> mu(2 * lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double l = lambda[i];
        const double s = std::sqrt(1.0 + l * l);
        mu[2 * i] = std::sqrt(1.0 + l * l + l * s);
        mu[2 * i + 1] = std::sqrt(1.0 + l * l - l * s);
    }
    return mu;
}

/// Normal form of a complex structure given as a matrix in an orthonormal
/// basis.
///
/// J^T J is symmetric positive definite with eigenvalues in reciprocal pairs
/// a^2, 1/a^2 (a = l + sqrt(1+l^2) >= 1). For a unit eigenvector v of a^2,
/// etilde_{2i-1} = v and etilde_{2i} = Jv / a, so that
///   J etilde_{2i-1} = (l + s) etilde_{2i},  J etilde_{2i} = (l - s) etilde_{2i-1},
/// and ebar_{2i-1} = (etilde_{2i-1} + etilde_{2i}) / sqrt2,
///     ebar_{2i}   = (etilde_{2i} - etilde_{2i-1}) / sqrt2
/// carry the block [[l, -s], [s, -l]].
inline NormalFormMatrix normal_form_matrix(const Mat<double>& j) {
    const std::size_t m = j.rows();
    if (m == 0 || m % 2 != 0 || !j.is_square()) throw std::invalid_argument("normal_form: need an even square matrix");
    require_complex(j, 1e-9);
    const std::size_t n = m / 2;
    auto eig = jacobi_eigh(j.transpose() * j, 1e-9);

    struct Pair {
        double lambda;
        Vec<double> v, w;  // etilde_{2i-1}, etilde_{2i}
    };
    std::vector<Pair> pairs;
    std::vector<Vec<double>> used;
    auto project_out = [&](Vec<double> v) {
        for (const auto& e : used) {
            const double c = dot(v, e);
            for (std::size_t i = 0; i < m; ++i) v[i] -= c * e[i];
        }
        return v;
    };
    while (pairs.size() < n) {
        // Largest eigenvalue whose eigenvector is not yet spanned. Inside a
        // merged eigenspace some candidate always keeps residual >= 1/2.
        Vec<double> v;
        for (std::size_t k = m; k-- > 0;) {
            Vec<double> c = project_out(eig.vectors.col(k));
            if (norm(c) >= 0.3) {
                v = std::move(c);
                break;
            }
        }
        if (v.empty()) break;
        const double nv = norm(v);
        for (auto& x : v) x /= nv;
        Vec<double> w = j * v;
        const double a = norm(w);
        for (auto& x : w) x /= a;
        // for a merged eigenspace near a = 1 the partner needs explicit orthogonalization
        w = project_out(std::move(w));
        const double cvw = dot(w, v);
        for (std::size_t i = 0; i < m; ++i) w[i] -= cvw * v[i];
        const double nw = norm(w);
        for (auto& x : w) x /= nw;
        used.push_back(v);
        used.push_back(w);
        pairs.push_back({0.5 * (a - 1.0 / a), v, w});
    }
    if (pairs.size() != n) throw std::domain_error("normal_form: could not split J into invariant planes");

    const double r = std::numbers::sqrt2 / 2.0;
    for (auto& pr : pairs) {
        // sign convention: first nonzero component of ebar_{2i-1} positive
        Vec<double> e1 = r * (pr.v + pr.w);
        for (double x : e1) {
            if (std::abs(x) > 1e-12) {
                if (x < 0) {
                    for (auto& y : pr.v) y = -y;
                    for (auto& y : pr.w) y = -y;
                }
                break;
            }
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (std::abs(a.lambda - b.lambda) > 1e-12) return std::abs(a.lambda) > std::abs(b.lambda);
        const Vec<double> ea = a.v + a.w, eb = b.v + b.w;
        for (std::size_t i = 0; i < ea.size(); ++i)
            if (std::abs(ea[i] - eb[i]) > 1e-12) return ea[i] > eb[i];
        return false;
    });

    NormalFormMatrix out{Vec<double>(n), Mat<double>(m, m), {}, Mat<double>(m, m)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pr = pairs[i];
        out.lambda[i] = pr.lambda;
        out.etilde.set_col(2 * i, pr.v);
        out.etilde.set_col(2 * i + 1, pr.w);
        out.ebar.set_col(2 * i, r * (pr.v + pr.w));
        out.ebar.set_col(2 * i + 1, r * (pr.w - pr.v));
    }
    out.mu = mu_from_lambda(out.lambda);
    return out;
}

/// Rebuild J from (lambda, ebar) in the same orthonormal basis.
inline Mat<double> reconstruct_from_normal_form(const Vec<double>& lambda, const Mat<double>& ebar) {
    return ebar * normal_form_template(lambda) * ebar.transpose();
}

struct NormalFormData {
    Vec<double> lambda;
    FrameAtPoint frame;          // ebar, <,>-orthonormal
    Vec<double> mu;
    FrameAtPoint rotated_frame;  // etilde, <,>-orthonormal
};

template <typename S>
NormalFormData normal_form(const S& s, const sphere::Point& p) {
    require_domain(s, p);
    const Mat<double> g = s.template g<double>(p.chart, p.u);
    const Mat<double> j = s.template j<double>(p.chart, p.u);
    const Mat<double> f = orthonormal_frame(g);
    const auto nf = normal_form_matrix(inverse(f) * j * f);
    NormalFormData out;
    out.lambda = nf.lambda;
    out.mu = nf.mu;
    out.frame = {p, f * nf.ebar, MetricTag::Round, false};
    out.rotated_frame = {p, f * nf.etilde, MetricTag::Round, false};
    return out;
}

/// e_k = etilde_k / mu_k: <,>_f-orthonormal with J e_{2i-1} = e_{2i}.
template <typename S>
FrameAtPoint adapted_frame(const S& s, const sphere::Point& p) {
    const auto nf = normal_form(s, p);
    Mat<double> e = nf.rotated_frame.vectors;
    for (std::size_t k = 0; k < e.cols(); ++k)
        for (std::size_t i = 0; i < e.rows(); ++i) e(i, k) /= nf.mu[k];
    return {p, e, MetricTag::Hermitian, true};
}

/// Frame residuals: max |gram - I| under the given metric, and max over pairs
/// of |J e_{2i-1} - e_{2i}|, |J e_{2i} + e_{2i-1}|.
inline double gram_residual(const Mat<double>& frame, const Mat<double>& metric) {
    return max_abs(frame.transpose() * metric * frame - Mat<double>::identity(frame.cols()));
}
inline double adaptedness_residual(const Mat<double>& frame, const Mat<double>& j) {
    double r = 0.0;
    for (std::size_t k = 0; k + 1 < frame.cols(); k += 2) {
        r = std::max(r, max_abs(j * frame.col(k) - frame.col(k + 1)));
        r = std::max(r, max_abs(j * frame.col(k + 1) + frame.col(k)));
    }
    return r;
}

}  // namespace acsphere::acs
