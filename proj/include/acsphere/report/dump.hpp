#pragma once

// Plot data on a G x G grid over u1, u2 in [-2, 2] (remaining coordinates 0)
// in the North chart. Points outside a local structure's domain get "nan".
//
//   sigma-pfaffian   Pf(sigma)
//   defect-norm      max |J(B+C) - (A-D)|
//   chern-density    S^2: c1(e1,e2) * dA_f/dA; otherwise c1(e_k,e_l), k < l
//   lambda-spectrum  lambda_1 .. lambda_n

#include <acsphere/acs/hermitian.hpp>
#include <acsphere/chern/chern.hpp>
#include <acsphere/connection/connection.hpp>
#include <acsphere/report/registry.hpp>
#include <acsphere/report/report.hpp>

#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace acsphere::report {

inline constexpr std::array<std::string_view, 4> kQuantities{"sigma-pfaffian", "defect-norm", "chern-density",
                                                             "lambda-spectrum"};
inline constexpr double kDumpExtent = 2.0;

inline bool known_quantity(std::string_view q) {
    for (auto k : kQuantities)
        if (k == q) return true;
    return false;
}

inline std::vector<std::string> value_columns(std::string_view q, std::size_t m) {
    const std::size_t n = m / 2;
    std::vector<std::string> cols;
    if (q == "lambda-spectrum") {
        for (std::size_t i = 1; i <= n; ++i) cols.push_back("lambda" + std::to_string(i));
    } else if (q == "chern-density" && m > 2) {
        for (std::size_t k = 1; k <= m; ++k)
            for (std::size_t l = k + 1; l <= m; ++l) cols.push_back("c1_" + std::to_string(k) + "_" + std::to_string(l));
    } else {
        cols.push_back(std::string(q == "sigma-pfaffian" ? "pfaffian" : q == "defect-norm" ? "defect" : "density"));
    }
    return cols;
}

template <typename S>
std::vector<double> dump_values(const S& s, std::string_view q, const Point& p) {
    const std::size_t m = s.dim();
    if (q == "sigma-pfaffian") return {chern::nondegeneracy(chern::sigma_form(s, p)).pfaffian};
    if (q == "defect-norm") return {conn::defect_norm(s, p)};
    if (q == "lambda-spectrum") return acs::normal_form(s, p).lambda;
    // chern-density
    if (m == 2) return {chern::chern_density(s, p)};
    const auto c1 = chern::chern_form(s, p);
    std::vector<double> v;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) v.push_back(c1(k, l));
    return v;
}

/// Writes the CSV; returns the number of grid points outside the domain.
inline std::size_t write_dump(std::ostream& out, std::string_view q, const Structure& st, std::size_t grid) {
    if (!known_quantity(q)) throw UsageError("unknown quantity '" + std::string(q) + "'");
    if (grid < 2) throw UsageError("grid must be at least 2");
    const std::size_t m = st.dim();
    const auto cols = value_columns(q, m);
    out << "chart";
    for (std::size_t k = 1; k <= m; ++k) out << ",u" << k;
    for (const auto& c : cols) out << ',' << c;
    out << '\n';

    std::size_t outside = 0;
    std::visit(
        [&](const auto& s) {
            for (std::size_t a = 0; a < grid; ++a)
                for (std::size_t b = 0; b < grid; ++b) {
                    Point p{Chart::North, Vec<double>(m, 0.0)};
                    p.u[0] = -kDumpExtent + 2.0 * kDumpExtent * static_cast<double>(a) / static_cast<double>(grid - 1);
                    p.u[1] = -kDumpExtent + 2.0 * kDumpExtent * static_cast<double>(b) / static_cast<double>(grid - 1);
                    std::vector<double> v(cols.size(), NAN);
                    if (s.contains(p))
                        v = dump_values(s, q, p);
                    else
                        ++outside;
                    out << sphere::to_string(p.chart);
                    for (double x : p.u) out << ',' << format_double(x);
                    for (double x : v) out << ',' << (std::isfinite(x) ? format_double(x) : std::string("nan"));
                    out << '\n';
                }
        },
        st.s);
    return outside;
}

}  // namespace acsphere::report
