// acsphere verify <suite> <structure> [--samples N] [--seed S] [--quad-order Q] [--per-point]
// acsphere dump <quantity> <structure> [--grid G] [--out path]
//
// exit: 0 all checks pass, 1 a check failed, 2 usage error

#include <acsphere/report/dump.hpp>
#include <acsphere/report/registry.hpp>
#include <acsphere/report/suites.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int run_verify(const std::string& suite, const std::string& structure, const acsphere::report::Options& opts) {
    using namespace acsphere::report;
    if (!known_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
    const Structure st = parse_structure(structure);
    const auto reports = run_suite(suite, st, opts, [](const Report& r) {
        write_ndjson(std::cout, r);
        std::cout.flush();
    });
    if (suite == "theorem3" || suite == "all") std::cerr << theorem3_narrative(reports);
    return all_pass(reports) ? kExitPass : kExitFail;
}

int run_dump(const std::string& quantity, const std::string& structure, std::size_t grid, const std::string& out_path) {
    using namespace acsphere::report;
    if (!known_quantity(quantity)) throw UsageError("unknown quantity '" + quantity + "'");
    const Structure st = parse_structure(structure);
    std::size_t outside = 0;
    if (out_path.empty()) {
        outside = write_dump(std::cout, quantity, st, grid);
    } else {
        std::ofstream f(out_path);
        if (!f) throw UsageError("cannot write '" + out_path + "'");
        outside = write_dump(f, quantity, st, grid);
    }
    if (outside) std::cerr << outside << " grid points outside the structure's domain written as nan\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moving-frame checks for almost complex structures on spheres"};
    app.require_subcommand(1);

    std::string suite, quantity, structure, out_path;
    acsphere::report::Options opts;
    std::size_t grid = 64;

    auto* verify = app.add_subcommand("verify", "run a verification suite, NDJSON reports on stdout");
    verify->add_option("suite", suite, "metric|ptensor|normal-form|curvature|lemma1|lemma2|chern-number|theorem3|all")
        ->required();
    verify->add_option("structure", structure, "s2-standard|s6-octonionic|s2-deformed:<lambda>|s6-deformed:<l1,l2,l3>|file:<path>")
        ->required();
    verify->add_option("--samples", opts.samples, "sample points")->check(CLI::PositiveNumber);
    verify->add_option("--seed", opts.seed, "sampling seed");
    verify->add_option("--quad-order", opts.quad_order, "Gauss-Legendre order for S^2 integrals")->check(CLI::PositiveNumber);
    verify->add_flag("--per-point", opts.per_point, "include per-point values");

    auto* dump = app.add_subcommand("dump", "write plot data as CSV");
    dump->add_option("quantity", quantity, "sigma-pfaffian|defect-norm|chern-density|lambda-spectrum")->required();
    dump->add_option("structure", structure, "structure name")->required();
    dump->add_option("--grid", grid, "grid size G (G x G points)")->check(CLI::Range(2, 4096));
    dump->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*verify) return run_verify(suite, structure, opts);
        return run_dump(quantity, structure, grid, out_path);
    } catch (const acsphere::report::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
