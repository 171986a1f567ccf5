// Command-line front end: decompose / critical / verify / sweep /
// sphere-min.  Exit codes: 0 success, 1 usage or input error, 2 solver
// undecided, 3 search failure, 4 verification failure.  Standard output
// carries only deterministic payload (12 significant digits, no
// timestamps); diagnostics go to standard error.

#include <array>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hankel_sos/hankel_sos.hpp"

namespace {

using namespace hankel_sos;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitSearchFailure = 3;
constexpr int kExitVerifyFailure = 4;

struct SolverFlags {
    std::optional<double> feas_tol;
    std::optional<int> max_iters;
    std::optional<int> stagnation_window;

    void attach(CLI::App& cmd) {
        cmd.add_option("--feas-tol", feas_tol, "solver feasibility tolerance (normalized)");
        cmd.add_option("--max-iters", max_iters, "solver iteration budget");
        cmd.add_option("--stagnation-window", stagnation_window,
                       "iterations of relative standstill before the solver reacts");
    }
    void apply(SolverOptions& opts) const {
        if (feas_tol) opts.feas_tol = *feas_tol;
        if (max_iters) opts.max_iters = *max_iters;
        if (stagnation_window) opts.stagnation_window = *stagnation_window;
    }
};

struct TupleFlags {
    double v1 = 0, v2 = 0, v3 = 0, v5 = 0, v6 = 0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--v1", v1, "generating value v1")->required();
        cmd.add_option("--v2", v2, "generating value v2")->required();
        cmd.add_option("--v3", v3, "generating value v3")->required();
        cmd.add_option("--v5", v5, "generating value v5")->required();
        cmd.add_option("--v6", v6, "generating value v6")->required();
    }
};

void print_kv(const std::string& key, double value) {
    std::cout << key << " = " << format_number(value) << "\n";
}

int run_decompose(const std::string& input_path, const std::optional<double>& v0_flag,
                  const std::string& out_path, const SolverFlags& sflags) {
    const InputSpec spec = read_input(input_path);
    if (!v0_flag && !spec.v0)
        throw InvalidInputError("decompose: no leading value; give \"v0\" in the input file or "
                                "pass --v0");
    const double v0 = v0_flag ? *v0_flag : *spec.v0;
    const GeneratingVector g = spec.generating(0.0);

    SolverOptions sopts;
    sflags.apply(sopts);
    const FeasibilityReport rep = solve_feasibility(g.with_v0(v0), sopts);

    print_kv("v0", v0);
    std::cout << "status = " << (rep.status == FeasStatus::Feasible ? "feasible" : "undecided")
              << "\n";
    print_kv("affine_residual", rep.affine_residual * rep.scale);
    if (rep.status != FeasStatus::Feasible) {
        if (v0 < 0.0)
            std::cout << "note = no certificate can exist: the leading coefficient equals v0, "
                         "a sum of squares needs v0 >= 0\n";
        return kExitUndecided;
    }

    const SosCertificate cert = cholesky_extract(rep.gram);
    const VerifyReport ver = verify_certificate(g, v0, cert);
    print_kv("max_coeff_residual", ver.max_coeff_residual);
    if (!ver.pass) {
        std::cerr << "[error] decompose: extracted certificate failed verification\n";
        return kExitVerifyFailure;
    }
    if (!out_path.empty())
        write_certificate(out_path, make_certificate_file(g, v0, cert, ver, rep));
    return kExitOk;
}

int run_critical(const TupleFlags& t, double tol, const std::string& out_path,
                 const SolverFlags& sflags) {
    CriticalOptions opts;
    sflags.apply(opts.solver);
    const CriticalValueResult res = critical_value(t.v1, t.v2, t.v3, t.v5, t.v6, tol, opts);

    print_kv("m1_lower", res.m1_lower);
    print_kv("m1_upper", res.m1_upper);
    if (!out_path.empty()) {
        const GeneratingVector g = GeneratingVector::from_params(0, t.v1, t.v2, t.v3, t.v5, t.v6);
        const VerifyReport ver = verify_certificate(g, res.m1_upper, res.certificate);
        FeasibilityReport rep;  // bisection already discarded per-probe stats
        rep.status = FeasStatus::Feasible;
        rep.gram = res.gram;
        write_certificate(out_path, make_certificate_file(g, res.m1_upper, res.certificate, ver, rep));
    }
    return kExitOk;
}

int run_verify(const std::string& input_path, const std::string& cert_path, double tol) {
    const InputSpec spec = read_input(input_path);
    const CertificateFile file = read_certificate(cert_path);
    // the input file is authoritative; the certificate echo only fills in
    // a leading value the input does not pin down
    const double v0 = spec.v0 ? *spec.v0 : file.input[0];
    const GeneratingVector g = spec.generating(0.0);

    const VerifyReport ver = verify_certificate(g, v0, file.certificate(), tol);
    print_kv("max_coeff_residual", ver.max_coeff_residual);
    print_kv("coeff_scale", ver.coeff_scale);
    std::cout << "pass = " << (ver.pass ? "true" : "false") << "\n";
    return ver.pass ? kExitOk : kExitVerifyFailure;
}

int run_sweep(const std::string& grid_path, const std::string& out_path, int workers, double tol,
              int restarts, std::uint64_t seed, const SolverFlags& sflags) {
    const auto grid = read_grid(grid_path);
    SweepOptions opts;
    opts.bisect_tol = tol;
    opts.workers = workers;
    opts.restarts = restarts;
    opts.base_seed = seed;
    sflags.apply(opts.critical.solver);
    const auto rows = sweep(grid, opts);

    if (out_path.empty())
        std::cout << sweep_csv(rows);
    else
        write_sweep_csv(out_path, rows);

    for (const auto& row : rows)
        if (row.status == "ok") return kExitOk;
    return kExitSearchFailure;
}

int run_sphere_min(const std::string& input_path, const std::optional<double>& v0_flag,
                   int restarts, std::uint64_t seed) {
    const InputSpec spec = read_input(input_path);
    if (!v0_flag && !spec.v0)
        throw InvalidInputError("sphere-min: no leading value; give \"v0\" in the input file or "
                                "pass --v0");
    const double v0 = v0_flag ? *v0_flag : *spec.v0;
    const auto res = sphere_min(spec.generating(0.0), v0, restarts, seed);

    print_kv("min_value", res.min_value);
    std::cout << "argmin = [" << format_number(res.argmin[0]) << ", "
              << format_number(res.argmin[1]) << ", " << format_number(res.argmin[2]) << ", "
              << format_number(res.argmin[3]) << "]\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-of-squares certificates for symmetric Hankel quartic forms"};
    app.require_subcommand(1);

    // decompose
    auto* dec = app.add_subcommand("decompose", "find and verify a certificate at a fixed v0");
    std::string dec_input;
    std::optional<double> dec_v0;
    std::string dec_out;
    SolverFlags dec_solver;
    dec->add_option("input", dec_input, "input JSON file")->required();
    dec->add_option("--v0", dec_v0, "leading value (overrides the input file)");
    dec->add_option("--out", dec_out, "write the certificate JSON here");
    dec_solver.attach(*dec);

    // critical
    auto* crit = app.add_subcommand("critical", "least v0 admitting a verified certificate");
    TupleFlags crit_tuple;
    double crit_tol = 1e-6;
    std::string crit_out;
    SolverFlags crit_solver;
    crit_tuple.attach(*crit);
    crit->add_option("--tol", crit_tol, "bisection bracket width");
    crit->add_option("--out", crit_out, "write the certificate at m1_upper here");
    crit_solver.attach(*crit);

    // verify
    auto* ver = app.add_subcommand("verify", "re-check a certificate file against an input");
    std::string ver_input, ver_cert;
    double ver_tol = 1e-7;
    ver->add_option("input", ver_input, "input JSON file")->required();
    ver->add_option("certificate", ver_cert, "certificate JSON file")->required();
    ver->add_option("--tol", ver_tol, "relative coefficient tolerance");

    // sweep
    auto* sw = app.add_subcommand("sweep", "critical value over a parameter grid, CSV out");
    std::string sw_grid, sw_out;
    int sw_workers = 1;
    double sw_tol = 1e-6;
    int sw_restarts = 64;
    std::uint64_t sw_seed = 42;
    SolverFlags sw_solver;
    sw->add_option("grid", sw_grid, "grid JSON file")->required();
    sw->add_option("--out", sw_out, "CSV output path (default: standard output)");
    sw->add_option("--workers", sw_workers, "worker threads");
    sw->add_option("--tol", sw_tol, "bisection bracket width");
    sw->add_option("--restarts", sw_restarts, "sphere-min restarts per row");
    sw->add_option("--seed", sw_seed, "base seed; row i uses seed + i");
    sw_solver.attach(*sw);

    // sphere-min
    auto* sp = app.add_subcommand("sphere-min", "minimum of the quartic on the unit sphere");
    std::string sp_input;
    std::optional<double> sp_v0;
    int sp_restarts = 64;
    std::uint64_t sp_seed = 42;
    sp->add_option("input", sp_input, "input JSON file")->required();
    sp->add_option("--v0", sp_v0, "leading value (overrides the input file)");
    sp->add_option("--restarts", sp_restarts, "random restarts");
    sp->add_option("--seed", sp_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic
        return kExitUsage;
    }

    try {
        if (*dec) return run_decompose(dec_input, dec_v0, dec_out, dec_solver);
        if (*crit) return run_critical(crit_tuple, crit_tol, crit_out, crit_solver);
        if (*ver) return run_verify(ver_input, ver_cert, ver_tol);
        if (*sw) return run_sweep(sw_grid, sw_out, sw_workers, sw_tol, sw_restarts, sw_seed,
                                  sw_solver);
        if (*sp) return run_sphere_min(sp_input, sp_v0, sp_restarts, sp_seed);
    } catch (const SearchFailureError& e) {
        std::cerr << "[error] " << e.what() << "\n";
        return kExitSearchFailure;
    } catch (const InvalidInputError& e) {
        std::cerr << "[error] " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "[error] " << e.what() << "\n";
        return kExitVerifyFailure;
    } catch (const Error& e) {
        std::cerr << "[error] " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
