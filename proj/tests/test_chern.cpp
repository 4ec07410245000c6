#include <acsphere/chern/chern.hpp>
#include <acsphere/report/registry.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace acsphere;
using namespace acsphere::chern;
using report::Structure;
using sphere::Chart;
using Catch::Matchers::WithinAbs;

namespace {

template <typename F>
void for_points(const Structure& st, std::size_t count, std::uint64_t seed, F&& f) {
    std::visit([&](const auto& s) {
        for (const auto& p : report::sample_points(st, count, seed)) f(s, p);
    }, st.s);
}

/// d tr(omega J0) by finite differences of its chart components, as a
/// frame 2-form.
template <typename S>
Mat<double> d_trace_omega_j0(const S& s, const Point& p) {
    const std::size_t m = s.dim();
    constexpr double h = 1e-5;
    const Mat<double> j0 = conn::j0_matrix(m / 2);
    auto theta = [&](const Vec<double>& u) {
        const auto c = conn::connection_matrix(s, Point{p.chart, u});
        const auto t = trace(matrix_form_product(c.omega, MatrixForm<double>::constant(j0, m)));
        return inverse(c.frame.vectors).transpose() * t.data();
    };
    std::vector<Vec<double>> d;
    for (std::size_t k = 0; k < m; ++k) {
        Vec<double> up = p.u, um = p.u;
        up[k] += h;
        um[k] -= h;
        d.push_back((1.0 / (2.0 * h)) * (theta(up) - theta(um)));
    }
    const Mat<double> e = s.template frame<double>(p.chart, p.u);
    Mat<double> out(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out(a, b) += e(k, a) * e(l, b) * (d[k][l] - d[l][k]);
    return out;
}

}  // namespace

TEST_CASE("sigma and c1 on the standard S^2") {
    for_points(report::make_s2_standard(), 100, 1, [](const auto& s, const Point& p) {
        const auto sig = sigma_form(s, p);
        CHECK_THAT(sig(0, 1), WithinAbs(-2.0, 1e-12));
        CHECK_THAT(sig(1, 0), WithinAbs(2.0, 1e-12));
        CHECK_THAT(chern_form(s, p)(0, 1), WithinAbs(1.0 / (2.0 * std::numbers::pi), 1e-13));
        CHECK_THAT(nondegeneracy(sig).pfaffian, WithinAbs(-2.0, 1e-12));
        CHECK(nondegeneracy(sig).nondegenerate);
    });
}

TEST_CASE("two routes to c1 agree") {
    for (const auto& st : {report::make_s2_standard(), report::make_s6_octonionic(), report::make_s2_deformed("0.3*u1 + 0.2*u2*u2"),
                           report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")})
        for_points(st, 25, 2, [](const auto& s, const Point& p) {
            const auto psi = chern_form_psi(s, p);
            CHECK(max_abs(chern_form(s, p).coeffs - psi.c1.coeffs) < 1e-8);
            CHECK(psi.imag_residue < kImagTol);
            CHECK(psi.psi_wedge_psi < 1e-10);
        });
}

TEST_CASE("sigma via an explicit connection must share the frame") {
    const auto st = report::make_s2_standard();
    const auto& s = std::get<report::S2Standard>(st.s);
    const Point p{Chart::North, {0.2, 0.1}}, q{Chart::North, {0.3, 0.1}};
    const auto curv = conn::curvature_matrix(s, p);
    CHECK(max_abs(sigma_form(curv, conn::connection_matrix(s, p)).coeffs - sigma_form(curv).coeffs) < 1e-15);
    CHECK_THROWS_AS(sigma_form(curv, conn::connection_matrix(s, q)), std::invalid_argument);
}

TEST_CASE("sigma(X, JX) expansion for 500 vectors") {
    const auto st = report::make_s2_standard();
    const auto& s = std::get<report::S2Standard>(st.s);
    const auto pts = report::sample_points(st, 100, 3);
    const auto xs = sphere::sample_vectors(2, 500, 4);
    for (std::size_t i = 0; i < 500; ++i) {
        const auto& p = pts[i / 5];
        const auto curv = conn::curvature_matrix(s, p);
        const auto e = sigma_expansion_check(s, curv, xs[i]);
        REQUIRE(e.applicable);
        CHECK(e.residual < 1e-8);
        CHECK_THAT(e.sigma_xjx, WithinAbs(-2.0 * inner(s.g<double>(p.chart, p.u), xs[i], xs[i]), 1e-8 * (1.0 + e.norm2)));
        CHECK(e.sigma_xjx < 0.0);
    }
}

TEST_CASE("expansion precondition fails off the integrable orthogonal case") {
    for_points(report::make_s6_octonionic(), 5, 5, [](const auto& s, const Point& p) {
        const auto e = sigma_expansion_check(s, conn::curvature_matrix(s, p), Vec<double>(6, 0.3));
        CHECK_FALSE(e.applicable);
    });
    for_points(report::make_s2_deformed("0.9*u1 + 0.4"), 5, 5, [](const auto& s, const Point& p) {
        const auto e = sigma_expansion_check(s, conn::curvature_matrix(s, p), Vec<double>{0.3, 0.1});
        CHECK_FALSE(e.applicable);
    });
}

TEST_CASE("sigma vanishes on the octonionic S^6") {
    for_points(report::make_s6_octonionic(), 20, 6, [](const auto& s, const Point& p) {
        const auto sig = sigma_form(s, p);
        CHECK(max_abs(sig.coeffs) < 1e-12);
        CHECK_FALSE(nondegeneracy(sig).nondegenerate);
        CHECK(max_abs(d_sigma(s, p)) < 1e-10);
    });
}

TEST_CASE("sigma is d tr(omega J0)") {
    for (const auto& st : {report::make_s2_standard(), report::make_s2_deformed("0.3*u1 + 0.2*u2*u2"),
                           report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")})
        for_points(st, 4, 7, [](const auto& s, const Point& p) {
            const auto sig = sigma_form(s, p).coeffs;
            CHECK(max_abs(sig - d_trace_omega_j0(s, p)) < 1e-6 * (1.0 + max_abs(sig)));
            CHECK(max_abs(d_sigma(s, p)) < 1e-9 * (1.0 + max_abs(sig)));
        });
}

TEST_CASE("c1 is closed") {
    for (const auto& st : {report::make_s2_standard(), report::make_s6_octonionic(),
                           report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")})
        for_points(st, 10, 8, [](const auto& s, const Point& p) { CHECK(max_abs(d_chern_psi(s, p)) < 1e-7); });
}

TEST_CASE("Chern number of the standard S^2") {
    const auto st = report::make_s2_standard();
    const auto& s = std::get<report::S2Standard>(st.s);
    CHECK_THAT(chern_number_s2(s, 20), WithinAbs(2.0, 1e-10));
    CHECK_THAT(chern_number_s2(s, 8, 2), WithinAbs(2.0, 1e-10));
    for (const auto& p : sphere::sample_sphere(2, 50, 9))
        CHECK_THAT(chern_density(s, p), WithinAbs(1.0 / (2.0 * std::numbers::pi), 1e-13));
    const auto s6 = report::make_s6_octonionic();
    CHECK_THROWS_AS(chern_number_s2(std::get<report::S6Octonionic>(s6.s), 20), std::invalid_argument);
}
