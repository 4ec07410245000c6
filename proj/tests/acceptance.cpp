// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.

#include <acsphere/acs/random.hpp>
#include <acsphere/chern/chern.hpp>
#include <acsphere/connection/connection.hpp>
#include <acsphere/report/registry.hpp>
#include <acsphere/report/suites.hpp>
#include <acsphere/sphere/quadrature.hpp>
#include <acsphere/sphere/sampling.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace acsphere;
using report::Structure;

namespace {

int failures = 0;

void line(int id, const char* what, bool pass, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, what, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

template <typename F>
double max_over(const Structure& st, std::size_t count, std::uint64_t seed, F&& f) {
    double r = 0.0;
    std::visit(
        [&](const auto& s) {
            for (const auto& p : report::sample_points(st, count, seed)) r = std::max(r, std::abs(f(s, p)));
        },
        st.s);
    return r;
}

template <typename F>
double min_over(const Structure& st, std::size_t count, std::uint64_t seed, F&& f) {
    double r = INFINITY;
    std::visit(
        [&](const auto& s) {
            for (const auto& p : report::sample_points(st, count, seed)) r = std::min(r, std::abs(f(s, p)));
        },
        st.s);
    return r;
}

const report::Report* find(const std::vector<report::Report>& rs, std::string_view id) {
    for (const auto& r : rs)
        if (r.check_id == id) return &r;
    return nullptr;
}

// 1 ------------------------------------------------------------------------
void chern_number() {
    const auto st = report::make_s2_standard();
    const auto t0 = std::chrono::steady_clock::now();
    report::Options o;
    o.quad_order = 20;
    const auto rs = report::run_suite("chern-number", st, o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto* r = find(rs, "chern-number.integral");
    const double v = r && r->value ? *r->value : NAN;
    line(1, "Chern number on S^2", std::abs(v - 2.0) <= 1e-6 && secs < 10.0,
         "integral " + report::format_double(v) + " at order 20 in " + fmt(secs) + " s");
}

// 2 ------------------------------------------------------------------------
void route_equality() {
    double worst = 0.0;
    for (const auto& st : {report::make_s2_standard(), report::make_s6_octonionic()})
        worst = std::max(worst, max_over(st, 100, 1, [](const auto& s, const auto& p) {
                             return max_abs(chern::chern_form(s, p).coeffs - chern::chern_form_psi(s, p).c1.coeffs);
                         }));
    line(2, "two routes to c1 agree", worst <= 1e-8, "max difference " + fmt(worst) + " (s2, s6, 100 points each)");
}

// 3 ------------------------------------------------------------------------
void constant_curvature() {
    double worst = 0.0;
    for (const auto& st : {report::make_s2_standard(), report::make_s6_octonionic()})
        worst = std::max(worst, max_over(st, 100, 1, [](const auto& s, const auto& p) {
                             return conn::constant_curvature_residual(conn::curvature_matrix(s, p));
                         }));
    line(3, "Omega = -omega^k ^ omega^l on the round sphere", worst <= 1e-6, "max residual " + fmt(worst));
}

// 4 ------------------------------------------------------------------------
void integrability() {
    std::vector<Structure> flat{report::make_s2_standard()};
    for (const char* l : {"0.3*u1 + 0.2*u2*u2", "u1*u2 - 0.5", "1.5", "0.1*u1^3 - u2^2 + 0.4*u1*u2"})
        flat.push_back(report::make_s2_deformed(l));
    double defect = 0.0, nij = 0.0;
    for (const auto& st : flat) {
        defect = std::max(defect, max_over(st, 100, 1, [](const auto& s, const auto& p) { return conn::defect_norm(s, p); }));
        nij = std::max(nij, max_over(st, 100, 1, [](const auto& s, const auto& p) { return conn::nijenhuis_sup(s, p); }));
    }
    const auto s6 = report::make_s6_octonionic();
    const double d6 = min_over(s6, 200, 1, [](const auto& s, const auto& p) { return conn::defect_norm(s, p); });
    const double n6 = min_over(s6, 200, 1, [](const auto& s, const auto& p) { return conn::nijenhuis_sup(s, p); });
    const bool pass = defect <= report::kDefectBound && nij <= report::kNijenhuisBound && d6 >= report::kS6DefectFloor &&
                      n6 >= report::kS6NijenhuisFloor;
    line(4, "integrability criterion vs Nijenhuis", pass,
         "dim 2: defect " + fmt(defect) + ", N " + fmt(nij) + "; s6 over 200 points: min defect " + fmt(d6) +
             " (floor " + fmt(report::kS6DefectFloor) + "), min N " + fmt(n6) + " (floor " +
             fmt(report::kS6NijenhuisFloor) + ")");
}

// 5 ------------------------------------------------------------------------
void p_tensor() {
    double sq = 0.0, iso = 0.0, conj = 0.0;
    report::Options o;
    for (const auto& st : {report::make_s2_standard(), report::make_s6_octonionic(), report::make_s2_deformed("0.3*u1 + 0.2*u2*u2"),
                           report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")}) {
        const auto rs = report::run_suite("ptensor", st, o);
        auto get = [&](std::string_view id) {
            const auto* r = find(rs, id);
            return r && r->max_abs_error ? *r->max_abs_error : INFINITY;
        };
        sq = std::max(sq, get("ptensor.square"));
        iso = std::max(iso, get("ptensor.isometry"));
        conj = std::max(conj, get("ptensor.conjugate-orthogonal"));
    }
    line(5, "P tensor identities", sq <= 1e-10 && iso <= 1e-9 && conj <= 1e-9,
         "P^2 " + fmt(sq) + ", <PX,PY> " + fmt(iso) + ", <QX,QY> " + fmt(conj) + " (4 structures, 100 triples each)");
}

// 6 ------------------------------------------------------------------------
void normal_form() {
    double rec = 0.0, mu = 0.0, gram = 0.0, adapted = 0.0;
    std::mt19937_64 rng(6);
    for (std::size_t m : {2, 4, 6})
        for (int k = 0; k < 100; ++k) {
            const auto c = acs::random_admissible_j(m, rng);
            const auto nf = acs::normal_form_matrix(c.j);
            rec = std::max(rec, max_abs(acs::reconstruct_from_normal_form(nf.lambda, nf.ebar) - c.j));
            for (std::size_t i = 0; i < m / 2; ++i) {
                const double a = nf.mu[2 * i], b = nf.mu[2 * i + 1];
                mu = std::max(mu, std::abs(a * a * b * b - (1.0 + nf.lambda[i] * nf.lambda[i])));
            }
            Mat<double> e = nf.etilde;
            for (std::size_t col = 0; col < m; ++col)
                for (std::size_t row = 0; row < m; ++row) e(row, col) /= nf.mu[col];
            const auto gf = acs::deformed_metric(Mat<double>::identity(m), c.j);
            gram = std::max(gram, acs::gram_residual(e, gf));
            adapted = std::max(adapted, acs::adaptedness_residual(e, c.j));
        }
    report::Options o;
    for (const auto& st : {report::make_s6_octonionic(), report::make_s2_deformed("0.3*u1 + 0.2*u2*u2"),
                           report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")}) {
        const auto rs = report::run_suite("normal-form", st, o);
        for (auto [id, slot] : {std::pair{"normal-form.adapted-gram", &gram}, std::pair{"normal-form.adapted-j", &adapted}}) {
            const auto* r = find(rs, id);
            *slot = std::max(*slot, r && r->max_abs_error ? *r->max_abs_error : INFINITY);
        }
    }
    line(6, "lambda normal form", rec <= 1e-8 && mu <= 1e-10 && gram <= 1e-10 && adapted <= 1e-10,
         "reconstruction " + fmt(rec) + ", mu identity " + fmt(mu) + ", gram " + fmt(gram) + ", adaptedness " +
             fmt(adapted));
}

// 7 ------------------------------------------------------------------------
MatrixForm<double> random_one_forms(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    MatrixForm<double> r(n, n, 1, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec<double> v(m);
            for (auto& x : v) x = nd(rng);
            r(i, j) = FormCoeffs<double>::one_form(v);
        }
    return r;
}

MatrixForm<double> skew_part(const MatrixForm<double>& a) { return 0.5 * (a - a.transpose()); }

/// Skew omega with J(B+C) = A - D.
MatrixForm<double> constrained_omega(std::size_t n, std::mt19937_64& rng) {
    const std::size_t m = 2 * n;
    const auto jf = acs::standard_pairs(m);
    const auto b = random_one_forms(n, m, rng);
    const auto c = -1.0 * b.transpose();
    const auto s = skew_part(random_one_forms(n, m, rng));
    const auto half = 0.5 * conn::j_action(b + c, jf);
    return conn::reassemble({s + half, b, c, s - half});
}

void theorem_identities() {
    const auto st = report::make_s2_standard();
    const auto& s = std::get<report::S2Standard>(st.s);
    const auto pts = report::sample_points(st, 100, 1);
    const auto xs = sphere::sample_vectors(2, 500, 7);

    double trace_s2 = 0.0, trace_syn = 0.0, expansion = 0.0, minus2 = 0.0, pf = 0.0;
    bool applicable = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto t = chern::trace_identity_check(s, p);
        applicable = applicable && t.applicable;
        trace_s2 = std::max(trace_s2, t.residual);
        const auto curv = conn::curvature_matrix(s, p);
        for (std::size_t k = 0; k < 5; ++k) {
            const auto& x = xs[5 * i + k];
            const auto e = chern::sigma_expansion_check(s, curv, x);
            applicable = applicable && e.applicable;
            expansion = std::max(expansion, e.residual);
            minus2 = std::max(minus2, std::abs(e.sigma_xjx + 2.0 * inner(s.g<double>(p.chart, p.u), x, x)));
        }
        pf = std::max(pf, std::abs(chern::nondegeneracy(chern::sigma_form(curv)).pfaffian + 2.0));
    }
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = 1 + static_cast<std::size_t>(k % 3);
        trace_syn = std::max(trace_syn, chern::trace_identity_residual(constrained_omega(n, rng),
                                                                       acs::standard_pairs(2 * n)));
    }
    line(7, "two-form identities", applicable && trace_s2 <= 1e-9 && trace_syn <= 1e-9 && expansion <= 1e-8 &&
                                       minus2 <= 1e-8 && pf <= 1e-8,
         "trace s2 " + fmt(trace_s2) + ", trace synthetic " + fmt(trace_syn) + ", expansion " + fmt(expansion) +
             ", sigma(X,JX)+2g(X,X) " + fmt(minus2) + ", |Pf+2| " + fmt(pf));
}

// 8 ------------------------------------------------------------------------
void closedness() {
    const double dc = max_over(report::make_s2_standard(), 100, 1, [](const auto& s, const auto& p) {
        return max_abs(chern::d_chern_psi(s, p));
    });
    line(8, "d c1 = 0 on S^2", dc <= 1e-7, "max |d c1| " + fmt(dc));
    const double ds = max_over(report::make_s6_octonionic(), 200, 1, [](const auto& s, const auto& p) {
        return max_abs(chern::d_sigma(s, p));
    });
    line(8, "d sigma nonzero somewhere on S^6", ds >= report::kDSigmaFloor,
         "max |d sigma| " + fmt(ds) + " over 200 points (floor " + fmt(report::kDSigmaFloor) + ")");
}

// 9 ------------------------------------------------------------------------
void determinism() {
    auto run = [] {
        std::ostringstream out;
        report::Options o;
        o.samples = 20;
        o.seed = 42;
        for (const auto& st : {report::make_s2_standard(), report::make_s6_deformed("0.5*u1, 0.2 + u2*u3, 0.1*u4^2")})
            report::run_suite("all", st, o, [&](const report::Report& r) { report::write_ndjson(out, r); });
        return out.str();
    };
    const std::string a = run(), b = run();
    const double area = sphere::quadrature_s2([](const sphere::Point&) { return 1.0; }, 20);
    const double err = std::abs(area - 4.0 * std::numbers::pi);
    line(9, "determinism and quadrature", a == b && !a.empty() && err <= 1e-10,
         std::string(a == b ? "identical" : "different") + " output over two runs (" + std::to_string(a.size()) +
             " bytes), |area - 4 pi| " + fmt(err));
}

}  // namespace

int main() {
    chern_number();
    route_equality();
    constant_curvature();
    integrability();
    p_tensor();
    normal_form();
    theorem_identities();
    closedness();
    determinism();
    std::printf("%d failing\n", failures);
    return failures == 0 ? 0 : 1;
}
