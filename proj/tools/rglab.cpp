// Command-line entry point: every subcommand builds a RunConfig, runs the
// corresponding verification suite, prints the JSON report, and exits with
// 0 (all pass), 2 (inconclusive only) or 1 (any failure / bad usage).

#include "rglab/reports.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

rglab::Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return rglab::Rational(rglab::BigInt(s));
    return rglab::frac(rglab::BigInt(s.substr(0, slash)), rglab::BigInt(s.substr(slash + 1)));
}

bool parse_k_range(const std::string& s, int& lo, int& hi) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(s);
        } else {
            lo = std::stoi(s.substr(0, dots));
            hi = std::stoi(s.substr(dots + 2));
        }
    } catch (...) {
        return false;
    }
    return true;
}

int run(const rglab::RunConfig& cfg, bool quiet) {
    try {
        rglab::Report report = rglab::run_command(cfg);
        if (!quiet) std::cout << report.to_json().dump(2) << "\n";
        for (const auto& c : report.checks)
            std::fprintf(stderr, "[%s] %s\n", c.status.c_str(), c.name.c_str());
        return report.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rg-taylor-lab: exact and numerical checks of operator-domain "
                 "boundary conditions and density-response identities"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags remain valid after the subcommand name

    rglab::RunConfig cfg;
    std::vector<std::string> lambda_args;
    std::string k_range = "2..50";
    bool quiet = false;

    app.add_flag("--quiet", quiet, "suppress the JSON report on stdout");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--out", cfg.out_dir, "output directory for report.json and CSV dumps");
    app.add_option("--grid", cfg.grid_points, "grid points for simulator scenarios");
    app.add_option("--dt", cfg.dt, "time step");
    app.add_option("--tend", cfg.t_end, "propagation end time");
    app.add_option("--tol-stationarity", cfg.tol.stationarity, "stationary-density drift budget");
    app.add_option("--tol-identity", cfg.tol.identity_rel, "relative identity tolerance");
    app.add_option("--tol-density", cfg.tol.density_equal_rel, "density-equality tolerance");
    app.add_option("--tol-identification", cfg.tol.identification, "identification tolerance");

    auto* vd = app.add_subcommand("verify-delta", "boundary-condition induction for the 1D delta "
                                                  "interaction (exact)");
    vd->add_option("--kmax", cfg.k_max, "jet-system depth, 1..8");
    vd->add_option("--lambda", lambda_args, "probe interaction strengths (integers or p/q)");

    auto* vh = app.add_subcommand("verify-hydrogen", "half-line hydrogen recursion and 2x2 systems "
                                                     "(exact)");
    vh->add_option("--k", k_range, "k range, e.g. 2..50");

    auto* sim = app.add_subcommand("simulate", "Crank-Nicolson simulator scenarios");
    sim->add_option("--scenario", cfg.scenario,
                    "stationary | gaussian-order | gauge | cusp-probe | all");

    auto* rg = app.add_subcommand("rg-check", "density-response identity checks");
    rg->add_option("--scenario", cfg.scenario,
                   "identity | gauge | bump-on-support | bump-off-support | functional | all");

    auto* tb = app.add_subcommand("twobody", "two-body singular-limit toolkit");
    tb->add_option("--suite", cfg.scenario,
                   "sphere | hessian | limit | commutator | hardy | cancellation | all");

    app.add_subcommand("all", "run every suite with defaults");

    CLI11_PARSE(app, argc, argv);

    if (!lambda_args.empty()) {
        cfg.lambdas.clear();
        for (const auto& s : lambda_args) {
            try {
                cfg.lambdas.push_back(parse_rational(s));
            } catch (const std::exception&) {
                std::fprintf(stderr, "error: cannot parse lambda '%s'\n", s.c_str());
                return 1;
            }
            if (cfg.lambdas.back() == 0) {
                std::fprintf(stderr, "error: lambda must be nonzero (the induction assumes a "
                                     "genuine point interaction)\n");
                return 1;
            }
        }
    }
    if (vh->parsed() && !parse_k_range(k_range, cfg.k_lo, cfg.k_hi)) {
        std::fprintf(stderr, "error: cannot parse k range '%s'\n", k_range.c_str());
        return 1;
    }

    if (vd->parsed()) cfg.command = "verify-delta";
    if (vh->parsed()) cfg.command = "verify-hydrogen";
    if (sim->parsed()) cfg.command = "simulate";
    if (rg->parsed()) cfg.command = "rg-check";
    if (tb->parsed()) cfg.command = "twobody";
    if (app.get_subcommand("all")->parsed()) {
        cfg.command = "all";
        cfg.scenario = "all";
    }

    return run(cfg, quiet);
}
