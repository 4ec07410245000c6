#pragma once

// Verification reports, one JSON object per line. Keys are always written in
// the same order and doubles with 17 significant digits, so identical runs
// give identical bytes.
//
//   kind = bound           pass iff max_abs_error <= threshold
//          floor           pass iff min_magnitude >= threshold (every point)
//          floor-any       pass iff max magnitude >= threshold (some point)
//          diagnostic      always passes, values reported only
//          not-applicable  precondition failed everywhere, always passes

#include <acsphere/sphere/atlas.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace acsphere::report {

enum class Kind { Bound, Floor, FloorAny, Diagnostic, NotApplicable };

inline const char* to_string(Kind k) {
    switch (k) {
        case Kind::Bound: return "bound";
        case Kind::Floor: return "floor";
        case Kind::FloorAny: return "floor-any";
        case Kind::Diagnostic: return "diagnostic";
        case Kind::NotApplicable: return "not-applicable";
    }
    return "?";
}

struct PointValue {
    sphere::Point p;
    double value = 0.0;
};

struct Report {
    std::string check_id;
    std::string structure;
    Kind kind = Kind::Bound;
    std::size_t n_points = 0;
    std::uint64_t seed = 0;
    std::optional<double> value;  // headline scalar (integrals, counts)
    std::optional<double> max_abs_error;
    std::optional<double> min_magnitude;
    std::optional<double> threshold;
    bool pass = false;
    std::string note;
    std::vector<PointValue> per_point;
};

struct Context {
    std::string structure;
    std::uint64_t seed = 0;
    bool keep_per_point = false;
};

inline Report make_report(const Context& cx, std::string id, Kind kind, std::size_t n) {
    Report r;
    r.check_id = std::move(id);
    r.structure = cx.structure;
    r.kind = kind;
    r.n_points = n;
    r.seed = cx.seed;
    return r;
}

/// Residuals at points, pass iff all <= threshold (NaN fails).
inline Report bound(const Context& cx, std::string id, const std::vector<PointValue>& vals, double threshold) {
    Report r = make_report(cx, std::move(id), Kind::Bound, vals.size());
    double mx = 0.0;
    bool finite = true;
    for (const auto& v : vals) {
        if (!std::isfinite(v.value)) finite = false;
        mx = std::max(mx, std::abs(v.value));
    }
    r.max_abs_error = finite ? mx : NAN;
    r.threshold = threshold;
    r.pass = finite && mx <= threshold;
    if (cx.keep_per_point) r.per_point = vals;
    return r;
}

/// Magnitudes at points, pass iff all >= floor.
inline Report floor_all(const Context& cx, std::string id, const std::vector<PointValue>& vals, double floor) {
    Report r = make_report(cx, std::move(id), Kind::Floor, vals.size());
    double mn = INFINITY;
    for (const auto& v : vals) mn = std::isfinite(v.value) ? std::min(mn, std::abs(v.value)) : NAN;
    if (vals.empty()) mn = NAN;
    r.min_magnitude = mn;
    r.threshold = floor;
    r.pass = mn >= floor;
    if (cx.keep_per_point) r.per_point = vals;
    return r;
}

/// Magnitudes at points, pass iff some >= floor.
inline Report floor_any(const Context& cx, std::string id, const std::vector<PointValue>& vals, double floor) {
    Report r = make_report(cx, std::move(id), Kind::FloorAny, vals.size());
    double mx = 0.0, mn = INFINITY;
    for (const auto& v : vals) {
        mx = std::max(mx, std::abs(v.value));
        mn = std::min(mn, std::abs(v.value));
    }
    r.value = vals.empty() ? NAN : mx;
    r.min_magnitude = vals.empty() ? NAN : mn;
    r.threshold = floor;
    r.pass = mx >= floor;
    if (cx.keep_per_point) r.per_point = vals;
    return r;
}

inline Report diagnostic(const Context& cx, std::string id, const std::vector<PointValue>& vals, std::string note = {}) {
    Report r = make_report(cx, std::move(id), Kind::Diagnostic, vals.size());
    double mx = 0.0, mn = INFINITY;
    for (const auto& v : vals) {
        mx = std::max(mx, std::abs(v.value));
        mn = std::min(mn, std::abs(v.value));
    }
    if (!vals.empty()) {
        r.max_abs_error = mx;
        r.min_magnitude = mn;
    }
    r.pass = true;
    r.note = std::move(note);
    if (cx.keep_per_point) r.per_point = vals;
    return r;
}

inline Report not_applicable(const Context& cx, std::string id, std::size_t n, std::string note) {
    Report r = make_report(cx, std::move(id), Kind::NotApplicable, n);
    r.pass = true;
    r.note = std::move(note);
    return r;
}

/// Single scalar compared against an expected value.
inline Report scalar_bound(const Context& cx, std::string id, double value, double expected, double threshold,
                           std::size_t n_points) {
    Report r = make_report(cx, std::move(id), Kind::Bound, n_points);
    r.value = value;
    r.max_abs_error = std::abs(value - expected);
    r.threshold = threshold;
    r.pass = std::abs(value - expected) <= threshold;
    return r;
}

inline Report failed(const Context& cx, std::string id, std::string why) {
    Report r = make_report(cx, std::move(id), Kind::Bound, 0);
    r.pass = false;
    r.note = std::move(why);
    return r;
}

// ---------------------------------------------------------------------------
// NDJSON

inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : "null"; }

inline std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string to_json_line(const Report& r) {
    std::string o = "{";
    o += "\"check_id\":" + quote(r.check_id);
    o += ",\"structure\":" + quote(r.structure);
    o += ",\"kind\":" + quote(to_string(r.kind));
    o += ",\"n_points\":" + std::to_string(r.n_points);
    o += ",\"seed\":" + std::to_string(r.seed);
    o += ",\"value\":" + format_optional(r.value);
    o += ",\"max_abs_error\":" + format_optional(r.max_abs_error);
    o += ",\"min_magnitude\":" + format_optional(r.min_magnitude);
    o += ",\"threshold\":" + format_optional(r.threshold);
    o += std::string(",\"pass\":") + (r.pass ? "true" : "false");
    o += ",\"note\":" + (r.note.empty() ? std::string("null") : quote(r.note));
    if (!r.per_point.empty()) {
        o += ",\"per_point\":[";
        for (std::size_t i = 0; i < r.per_point.size(); ++i) {
            const auto& pv = r.per_point[i];
            if (i) o += ",";
            o += "{\"chart\":" + quote(std::string(sphere::to_string(pv.p.chart))) + ",\"u\":[";
            for (std::size_t k = 0; k < pv.p.u.size(); ++k) o += (k ? "," : "") + format_double(pv.p.u[k]);
            o += "],\"value\":" + format_double(pv.value) + "}";
        }
        o += "]";
    }
    o += "}";
    return o;
}

inline void write_ndjson(std::ostream& out, const Report& r) { out << to_json_line(r) << '\n'; }

}  // namespace acsphere::report
