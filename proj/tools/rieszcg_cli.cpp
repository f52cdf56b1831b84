// rieszcg: generate, solve and verify function-valued linear systems.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible verdict,
//             3 verification failure, 4 I/O or validation error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rieszcg/rieszcg.hpp"

namespace {

using namespace rieszcg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

struct GenerateArgs {
    std::size_t n = 4;
    std::size_t samples = 16;
    double kappa = 10.0;
    double perturbation = 0.1;
    std::uint64_t seed = 0;
    std::string mode = "random";
    std::string out;
};

struct SolveArgs {
    std::string problem;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::string x0;
    std::string out;
    std::string csv;
    bool skip_validate = false;
};

struct OracleArgs {
    std::string problem;
    std::string out;
    bool skip_validate = false;
};

struct CompareArgs {
    std::string trace;
    std::string oracle;
    double tol = 1e-10;
};

struct BoundArgs {
    std::string problem;
    std::string trace;
    std::string out;
    std::string csv;
    double slack = 1e-9;
    bool skip_validate = false;
};

struct VerifyArgs {
    std::string trace;
    std::string problem;
    double rel = 1e-8;
};

int run_generate(const GenerateArgs& a) {
    const auto p = generate_problem(a.n, a.samples, a.kappa, a.perturbation, a.seed, a.mode);
    io::save_problem(a.out, p);
    const auto s = eigen_functions(p.A);
    std::cout << "generated n=" << p.n() << " samples=" << p.m() << " kappa=" << s.kappa << " -> " << a.out << "\n";
    return kExitOk;
}

int run_solve(const SolveArgs& a) {
    const auto p = io::load_problem(a.problem, !a.skip_validate);
    CgConfig cfg;
    if (a.tol) cfg.residual_tol = *a.tol;
    cfg.max_iter = a.max_iter;
    std::optional<FunctionVector> x0 = p.x0;
    if (!a.x0.empty()) x0 = io::load_vector(a.x0, p.space, p.n());
    const auto out = cg_solve(p.A, p.b, x0, cfg);
    io::save_trace(a.out, out, cfg);
    if (!a.csv.empty()) io::write_atomic(a.csv, io::trace_csv(out));
    std::cout << "verdict " << to_string(out.verdict) << " at k=" << out.verdict_k
              << " residual_sup=" << out.records.back().residual_sup << "\n";
    if (out.verdict == CgVerdict::Infeasible) {
        std::cout << "witness samples:";
        for (std::size_t s : out.records.back().infeasible_samples) std::cout << " " << s;
        std::cout << "\n";
        return kExitInfeasible;
    }
    return out.verdict == CgVerdict::Successful ? kExitOk : kExitVerification;
}

int run_oracle(const OracleArgs& a) {
    const auto p = io::load_problem(a.problem, !a.skip_validate);
    io::save_oracle(a.out, pointwise_oracle(p));
    std::cout << "oracle: " << p.space->support().size() << " samples solved -> " << a.out << "\n";
    return kExitOk;
}

int run_compare(const CompareArgs& a) {
    const auto trace = io::load_trace(a.trace);
    const auto oracle = io::load_oracle(a.oracle);
    const auto rep = compare(trace.outcome, oracle, a.tol);
    std::cout << io::to_json(rep).dump(2) << "\n";
    return rep.pass() ? kExitOk : kExitVerification;
}

int run_bound(const BoundArgs& a) {
    const auto p = io::load_problem(a.problem, !a.skip_validate);
    const auto trace = io::load_trace(a.trace);
    const auto oracle = pointwise_oracle(p);
    const auto rep = verify_rate(trace.outcome, p.A, oracle.per_sample_solutions(p.space), ToleranceConfig{a.slack, false});
    io::write_atomic(a.out, io::dump(io::to_json(rep)));
    if (!a.csv.empty()) io::write_atomic(a.csv, io::bound_csv(rep));
    std::cout << "kappa=" << rep.kappa << " envelope " << (rep.all_hold() ? "holds" : "VIOLATED") << " for "
              << rep.per_k.size() << " iterates\n";
    return rep.all_hold() ? kExitOk : kExitVerification;
}

int run_verify(const VerifyArgs& a) {
    const auto trace = io::load_trace(a.trace);
    const auto p = io::load_problem(a.problem, false);
    const auto rep = verify_orthogonality(trace.outcome, p.A, p.b);
    const double threshold = a.rel * rep.scale;
    std::cout << io::to_json(rep, threshold).dump(2) << "\n";
    return rep.worst() <= threshold ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conjugate gradients over algebras of sampled measurable functions"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Write a seeded SPD problem A(x) x = b(x)");
    g->add_option("--n", gen.n, "System dimension")->required();
    g->add_option("--samples", gen.samples, "Number of sample points")->required();
    g->add_option("--kappa", gen.kappa, "Target global condition number")->required();
    g->add_option("--perturbation", gen.perturbation, "Relative size of the sampled perturbation, in [0, 1)")->required();
    g->add_option("--seed", gen.seed, "RNG seed")->required();
    g->add_option("--mode", gen.mode, "Generator family")->check(CLI::IsMember({"random", "mirrored"}));
    g->add_option("-o,--output", gen.out, "Problem JSON path")->required();

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Run conjugate gradients in the function algebra");
    s->add_option("problem", sol.problem, "Problem JSON")->required();
    s->add_option("--tol", sol.tol, "Residual tolerance (stop when sup r^T r < tol^2)");
    s->add_option("--max-iter", sol.max_iter, "Maximum number of steps (default n)");
    s->add_option("--x0", sol.x0, "Initial guess JSON");
    s->add_option("-o,--output", sol.out, "Trace JSON path")->required();
    s->add_option("--csv", sol.csv, "Optional CSV summary path");
    s->add_flag("--skip-validate", sol.skip_validate, "Do not check A for symmetry and definiteness");

    OracleArgs orc;
    auto* o = app.add_subcommand("oracle", "Per-sample direct solves and scalar CG runs");
    o->add_option("problem", orc.problem, "Problem JSON")->required();
    o->add_option("-o,--output", orc.out, "Oracle JSON path")->required();
    o->add_flag("--skip-validate", orc.skip_validate, "Do not check A for symmetry and definiteness");

    CompareArgs cmp;
    auto* c = app.add_subcommand("compare", "Compare algebra iterates with the per-sample oracle");
    c->add_option("trace", cmp.trace, "Trace JSON")->required();
    c->add_option("oracle", cmp.oracle, "Oracle JSON")->required();
    c->add_option("--tol", cmp.tol, "Maximum relative deviation");

    BoundArgs bnd;
    auto* b = app.add_subcommand("bound", "Check the Chebyshev error envelope along a trace");
    b->add_option("problem", bnd.problem, "Problem JSON")->required();
    b->add_option("trace", bnd.trace, "Trace JSON")->required();
    b->add_option("-o,--output", bnd.out, "Report JSON path")->required();
    b->add_option("--csv", bnd.csv, "Optional CSV of k, lhs_sup, rhs, margin");
    b->add_option("--slack", bnd.slack, "Absolute slack allowed in the pointwise check");
    b->add_flag("--skip-validate", bnd.skip_validate, "Do not check A for symmetry and definiteness");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Measure orthogonality of residuals and search directions");
    v->add_option("trace", ver.trace, "Trace JSON")->required();
    v->add_option("problem", ver.problem, "Problem JSON")->required();
    v->add_option("--rel", ver.rel, "Threshold relative to sup|b| * sup|A|_F");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*g) return run_generate(gen);
        if (*s) return run_solve(sol);
        if (*o) return run_oracle(orc);
        if (*c) return run_compare(cmp);
        if (*b) return run_bound(bnd);
        if (*v) return run_verify(ver);
    } catch (const BadParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (byte " << e.position() << ")\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
