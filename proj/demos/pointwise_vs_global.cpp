// Solves a small function-valued system twice: once on a problem where CG is
// feasible everywhere, and once on the mirrored problem where the control
// term stops being one-signed even though every sample is solvable alone.

#include <iostream>

#include "rieszcg/rieszcg.hpp"

using namespace rieszcg;

static void report(const char* name, const Problem& p) {
    const auto out = cg_solve(p.A, p.b);
    std::cout << name << ": " << to_string(out.verdict) << " at k=" << out.verdict_k << "\n";
    for (const auto& rec : out.records)
        std::cout << "  k=" << rec.k << "  sup r^T r=" << rec.residual_sup
                  << "  alpha in S: " << (rec.alpha_feasible ? "yes" : "no") << "\n";
    if (out.verdict == CgVerdict::Infeasible) {
        std::cout << "  witnesses:";
        for (auto s : out.records.back().infeasible_samples) std::cout << " " << s;
        std::cout << "\n";
    }
    const auto oracle = pointwise_oracle(p);
    const auto x_star = oracle.per_sample_solutions(p.space);
    std::cout << "  sup_X |x* - x_final|_A = "
              << sup_over_space(pointwise_norm_A(sub(x_star, out.final_x), p.A)) << "\n";
}

int main() {
    report("random", generate_problem(4, 8, 20.0, 0.2, 7));
    report("mirrored", generate_problem(4, 2, 20.0, 0.0, 7, "mirrored"));
}
