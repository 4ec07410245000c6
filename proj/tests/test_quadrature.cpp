#include <acsphere/sphere/quadrature.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace acsphere;
using namespace acsphere::sphere;
using Catch::Matchers::WithinAbs;

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const auto r = gauss_legendre(10);
    for (int k = 0; k < 20; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK_THAT(s, WithinAbs(exact, 1e-14));
    }
}

TEST_CASE("area of the unit sphere") {
    CHECK_THAT(quadrature_s2([](const Point&) { return 1.0; }, 20), WithinAbs(4.0 * std::numbers::pi, 1e-10));
    CHECK_THAT(quadrature_s2([](const Point&) { return 1.0; }, 20, 4), WithinAbs(4.0 * std::numbers::pi, 1e-10));
}

TEST_CASE("low degree polynomials in the embedding") {
    auto integral = [](auto f) { return quadrature_s2([&](const Point& p) { return f(embed(p)); }, 8); };
    const double pi = std::numbers::pi;
    CHECK_THAT(integral([](const Vec<double>& x) { return x[2]; }), WithinAbs(0.0, 1e-13));
    CHECK_THAT(integral([](const Vec<double>& x) { return x[0] * x[1]; }), WithinAbs(0.0, 1e-13));
    CHECK_THAT(integral([](const Vec<double>& x) { return x[2] * x[2]; }), WithinAbs(4.0 * pi / 3.0, 1e-13));
    CHECK_THAT(integral([](const Vec<double>& x) { return x[0] * x[0] * x[1] * x[1]; }), WithinAbs(4.0 * pi / 15.0, 1e-13));
    CHECK_THAT(integral([](const Vec<double>& x) { return x[0] * x[0] * x[0] * x[2] * x[2]; }), WithinAbs(0.0, 1e-13));
}

TEST_CASE("integrand sees chart points with |u| <= 1") {
    double worst = 0.0;
    quadrature_s2(
        [&](const Point& p) {
            worst = std::max(worst, squared_norm(p.u));
            return 0.0;
        },
        12);
    CHECK(worst <= 1.0);
}

TEST_CASE("parallel evaluation gives identical sums") {
    auto f = [](const Point& p) { return std::exp(embed(p)[0]); };
    CHECK(quadrature_s2(f, 16, 1) == quadrature_s2(f, 16, 3));
}

TEST_CASE("argument errors") {
    CHECK_THROWS_AS(quadrature_s2(6, [](const Point&) { return 1.0; }, 20), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
    CHECK_NOTHROW(quadrature_s2(2, [](const Point&) { return 1.0; }, 4));
}
