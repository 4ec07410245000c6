#pragma once

// Named structures for the CLI:
//   s2-standard
//   s6-octonionic
//   s2-deformed:<lambda>            one polynomial in u1, u2 (North chart, |u| <= 2)
//   s6-deformed:<l1>,<l2>,<l3>      octonionic structure deformed in its own adapted frame
//   file:<path>                     JSON polynomial matrix field, see data/structures/README.md

#include <acsphere/acs/fields.hpp>
#include <acsphere/acs/hermitian.hpp>
#include <acsphere/acs/polynomial.hpp>
#include <acsphere/acs/structure.hpp>
#include <acsphere/sphere/atlas.hpp>
#include <acsphere/sphere/sampling.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace acsphere::report {

using sphere::Chart;
using sphere::Point;
using sphere::RoundMetric;

/// Bad structure name or unreadable/invalid structure file.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using S2Standard = acs::AlmostHermitian<RoundMetric, acs::StandardS2Acs>;
using S6Octonionic = acs::AlmostHermitian<RoundMetric, acs::OctonionicS6Acs>;
using S2Deformed = acs::AlmostHermitian<RoundMetric, acs::DeformedAcs<acs::ConformalFrameField, RoundMetric>>;
using S6Deformed =
    acs::AlmostHermitian<RoundMetric, acs::DeformedAcs<acs::AdaptedFrameField<acs::OctonionicS6Acs>, RoundMetric>>;
using FileStructure = acs::AlmostHermitian<RoundMetric, acs::PolynomialAcs>;

using AnyStructure = std::variant<S2Standard, S6Octonionic, S2Deformed, S6Deformed, FileStructure>;

struct Structure {
    AnyStructure s;
    bool global = true;              // defined on the whole sphere
    Chart chart = Chart::North;      // chart of a local structure
    double radius = 0.0;             // |u| bound of a local structure
    std::optional<bool> integrable;  // known answer, if any
    bool round_orthogonal = false;

    const std::string& name() const {
        return std::visit([](const auto& x) -> const std::string& { return x.name; }, s);
    }
    std::size_t dim() const {
        return std::visit([](const auto& x) { return x.dim(); }, s);
    }
};

/// Seeded sample points inside the structure's domain.
inline std::vector<Point> sample_points(const Structure& st, std::size_t count, std::uint64_t seed) {
    if (st.global) return sphere::sample_sphere(st.dim(), count, seed);
    if (st.chart != Chart::North) throw std::logic_error("sample_points: only North-chart local structures");
    return sphere::sample_north_ball(st.dim(), count, seed, st.radius);
}

inline constexpr double kLocalRadius = 2.0;

inline Structure make_s2_standard() {
    return {acs::make_structure("s2-standard", RoundMetric{}, acs::standard_acs_s2()), true, Chart::North, 0.0, true,
            true};
}

inline Structure make_s6_octonionic() {
    return {acs::make_structure("s6-octonionic", RoundMetric{}, acs::octonionic_acs_s6()), true, Chart::North, 0.0,
            false, true};
}

inline Structure make_s2_deformed(std::string_view spec) {
    auto lambdas = acs::parse_lambda_spec(spec, 2);
    if (lambdas.size() != 1) throw UsageError("s2-deformed takes exactly one lambda expression");
    auto a = acs::deformed_acs(std::move(lambdas), acs::ConformalFrameField{}, RoundMetric{}, Chart::North, kLocalRadius);
    // every almost complex structure in real dimension 2 is integrable
    return {acs::make_structure("s2-deformed:" + std::string(spec), RoundMetric{}, std::move(a)), false, Chart::North,
            kLocalRadius, true, false};
}

inline Structure make_s6_deformed(std::string_view spec) {
    auto lambdas = acs::parse_lambda_spec(spec, 6);
    if (lambdas.size() != 3) throw UsageError("s6-deformed takes exactly three lambda expressions");
    auto a = acs::deformed_acs(std::move(lambdas), acs::AdaptedFrameField<acs::OctonionicS6Acs>{acs::octonionic_acs_s6()},
                               RoundMetric{}, Chart::North, kLocalRadius);
    return {acs::make_structure("s6-deformed:" + std::string(spec), RoundMetric{}, std::move(a)), false, Chart::North,
            kLocalRadius, std::nullopt, false};
}

// ---------------------------------------------------------------------------
// structure files

namespace detail {

inline acs::Polynomial parse_entry(const nlohmann::json& e, std::size_t m, const std::string& where) {
    if (e.is_number()) return acs::Polynomial::constant(m, e.get<double>());
    if (e.is_string()) return acs::parse_polynomial(e.get<std::string>(), m);
    if (!e.is_array()) throw UsageError(where + ": entry must be a number, an expression string or a list of terms");
    acs::Polynomial p(m);
    for (const auto& t : e) {
        if (!t.is_object() || !t.contains("coeff"))
            throw UsageError(where + ": each term needs \"coeff\" (and optionally \"pow\")");
        std::vector<int> pw(m, 0);
        if (t.contains("pow")) {
            pw = t.at("pow").get<std::vector<int>>();
            if (pw.size() != m) throw UsageError(where + ": \"pow\" must have " + std::to_string(m) + " exponents");
        }
        p.add_term(t.at("coeff").get<double>(), pw);
    }
    return p;
}

}  // namespace detail

inline constexpr std::size_t kFileValidationPoints = 32;

/// {"dimension": m, "chart": "north", "radius": r, "entries": m x m}
/// Each entry: a number, an expression string ("0.5*u1^2 - 1"), or a list of
/// {"coeff": c, "pow": [k1, ..., km]} terms. J^2 = -I is checked at seeded
/// points of the domain.
inline Structure load_structure_json(const nlohmann::json& doc, const std::string& label) {
    try {
        const std::size_t m = doc.at("dimension").get<std::size_t>();
        if (m == 0 || m % 2 != 0) throw UsageError(label + ": dimension must be even and positive");
        const std::string chart = doc.value("chart", std::string("north"));
        if (chart != "north") throw UsageError(label + ": only \"north\" chart structures are supported");
        const double radius = doc.value("radius", kLocalRadius);
        if (!(radius > 0.0)) throw UsageError(label + ": radius must be positive");
        const auto& rows = doc.at("entries");
        if (!rows.is_array() || rows.size() != m) throw UsageError(label + ": entries must have " + std::to_string(m) + " rows");

        acs::PolynomialAcs a;
        a.chart = Chart::North;
        a.radius = radius;
        for (std::size_t r = 0; r < m; ++r) {
            if (!rows[r].is_array() || rows[r].size() != m)
                throw UsageError(label + ": row " + std::to_string(r) + " must have " + std::to_string(m) + " entries");
            std::vector<acs::Polynomial> row;
            for (std::size_t c = 0; c < m; ++c)
                row.push_back(detail::parse_entry(rows[r][c], m,
                                                  label + " entry (" + std::to_string(r) + "," + std::to_string(c) + ")"));
            a.entries.push_back(std::move(row));
        }
        Structure st{acs::make_structure("file:" + label, RoundMetric{}, std::move(a)), false, Chart::North, radius,
                     std::nullopt, false};
        bool orth = true;
        for (const auto& p : sample_points(st, kFileValidationPoints, 0)) {
            const auto& fs = std::get<FileStructure>(st.s);
            const Mat<double> j = fs.j<double>(p.chart, p.u), g = fs.g<double>(p.chart, p.u);
            const double res = acs::complex_residual(j);
            if (!(res <= 1e-10))
                throw UsageError(label + ": J^2 != -I inside the domain (residual " + std::to_string(res) + ")");
            orth = orth && max_abs(j.transpose() * g * j - g) <= 1e-10 * max_abs(g);
        }
        st.round_orthogonal = orth;
        if (m == 2) st.integrable = true;
        return st;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(label + ": " + e.what());
    } catch (const acs::PolynomialError& e) {
        throw UsageError(label + ": " + e.what());
    }
}

inline Structure load_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open structure file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    return load_structure_json(doc, path);
}

inline Structure parse_structure(std::string_view name) {
    auto tail = [&](std::string_view prefix) { return name.substr(prefix.size()); };
    try {
        if (name == "s2-standard") return make_s2_standard();
        if (name == "s6-octonionic") return make_s6_octonionic();
        if (name.starts_with("s2-deformed:")) return make_s2_deformed(tail("s2-deformed:"));
        if (name.starts_with("s6-deformed:")) return make_s6_deformed(tail("s6-deformed:"));
        if (name.starts_with("file:")) return load_structure_file(std::string(tail("file:")));
    } catch (const acs::PolynomialError& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
    throw UsageError("unknown structure '" + std::string(name) +
                     "' (expected s2-standard, s6-octonionic, s2-deformed:<lambda>, s6-deformed:<l1,l2,l3>, file:<path>)");
}

}  // namespace acsphere::report
