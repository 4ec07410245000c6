#include <acsphere/acs/hermitian.hpp>
#include <acsphere/acs/random.hpp>
#include <acsphere/report/registry.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace acsphere;
using namespace acsphere::acs;
using Catch::Matchers::WithinAbs;

TEST_CASE("lambda = 1 example") {
    const double r2 = std::sqrt(2.0);
    const Mat<double> j{{1.0, -r2}, {r2, -1.0}};
    const auto nf = normal_form_matrix(j);
    REQUIRE(nf.lambda.size() == 1);
    CHECK_THAT(nf.lambda[0], WithinAbs(1.0, 1e-13));
    CHECK_THAT(nf.mu[0], WithinAbs(1.847759, 1e-6));
    CHECK_THAT(nf.mu[1], WithinAbs(0.765366, 1e-6));
    CHECK(max_abs(reconstruct_from_normal_form(nf.lambda, nf.ebar) - j) < 1e-13);
}

TEST_CASE("template blocks are complex structures") {
    const auto t = normal_form_template(Vec<double>{0.0, 0.7, 3.0});
    CHECK(complex_residual(t) < 1e-14);
    CHECK(max_abs(normal_form_template(Vec<double>{0.0}) - Mat<double>{{0.0, -1.0}, {1.0, 0.0}}) == 0.0);
}

TEST_CASE("random admissible J recover their normal form") {
    std::mt19937_64 rng(17);
    for (std::size_t m : {2, 4, 6})
        for (int k = 0; k < 100; ++k) {
            const auto c = random_admissible_j(m, rng);
            const auto nf = normal_form_matrix(c.j);
            CHECK(max_abs(reconstruct_from_normal_form(nf.lambda, nf.ebar) - c.j) < 1e-8);
            CHECK(max_abs(nf.lambda - c.lambda) < 1e-8);
            CHECK(std::is_sorted(nf.lambda.rbegin(), nf.lambda.rend()));
            CHECK(max_abs(nf.ebar.transpose() * nf.ebar - Mat<double>::identity(m)) < 1e-12);
            CHECK(max_abs(nf.etilde.transpose() * nf.etilde - Mat<double>::identity(m)) < 1e-12);
            for (std::size_t i = 0; i < m / 2; ++i) {
                const double a = nf.mu[2 * i], b = nf.mu[2 * i + 1], l = nf.lambda[i];
                CHECK_THAT(a * a * b * b, WithinAbs(1.0 + l * l, 1e-10));
                const double s = std::sqrt(1.0 + l * l);
                // J etilde_{2i-1} = (l + s) etilde_{2i}, J etilde_{2i} = (l - s) etilde_{2i-1}
                CHECK(max_abs(c.j * nf.etilde.col(2 * i) - (l + s) * nf.etilde.col(2 * i + 1)) < 1e-9);
                CHECK(max_abs(c.j * nf.etilde.col(2 * i + 1) - (l - s) * nf.etilde.col(2 * i)) < 1e-9);
            }
        }
}

TEST_CASE("orthogonal J has lambda = 0") {
    std::mt19937_64 rng(18);
    const auto q = random_orthogonal(6, rng);
    const auto j = q * standard_pairs(6) * q.transpose();
    const auto nf = normal_form_matrix(j);
    CHECK(max_abs(nf.lambda) < 1e-12);
    for (double mu : nf.mu) CHECK_THAT(mu, WithinAbs(1.0, 1e-12));
    CHECK(max_abs(reconstruct_from_normal_form(nf.lambda, nf.ebar) - j) < 1e-12);
}

TEST_CASE("adapted frames on structures") {
    for (const auto& st : {report::make_s2_standard(), report::make_s6_octonionic(), report::make_s2_deformed("0.3*u1 + 0.2*u2*u2"),
                           report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")})
        std::visit(
            [](const auto& s) {
                for (const auto& p : report::sample_points(report::parse_structure(s.name), 50, 2)) {
                    const auto f = adapted_frame(s, p);
                    const auto gf = hermitian_metric(s, p);
                    const double len = 1.0 / std::sqrt(sphere::round_conformal_factor(p.u));
                    CHECK(gram_residual(f.vectors, gf) < 1e-10);
                    CHECK(adaptedness_residual(f.vectors, s.template j<double>(p.chart, p.u)) < 1e-10 * len);
                    // the smooth Hermitian Gram-Schmidt frame is adapted too
                    const auto e = s.template frame<double>(p.chart, p.u);
                    CHECK(gram_residual(e, gf) < 1e-10);
                    CHECK(adaptedness_residual(e, s.template j<double>(p.chart, p.u)) < 1e-10 * len);
                }
            },
            st.s);
}

TEST_CASE("deformed structures report their own lambda") {
    const auto st = report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2");
    const auto& s = std::get<report::S6Deformed>(st.s);
    for (const auto& p : report::sample_points(st, 50, 3)) {
        auto want = s.acs.lambda_values(p.u);
        for (auto& l : want) l = std::abs(l);
        std::sort(want.begin(), want.end(), std::greater<>());
        CHECK(max_abs(normal_form(s, p).lambda - want) < 1e-8);
    }
}
