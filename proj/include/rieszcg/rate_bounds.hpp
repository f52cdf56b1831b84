#pragma once

// Checks the Chebyshev envelope on CG errors measured in the A-norm:
//   ‖x* - x_k‖_A <= 2 ((√κ - 1)/(√κ + 1))^k ‖x* - x_0‖_A
// with κ = λ̄ / λ̲ taken from the global extrema of the eigenvalue functions.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "rieszcg/cg_solver.hpp"
#include "rieszcg/chebyshev.hpp"
#include "rieszcg/function_linalg.hpp"

namespace rieszcg {

struct BoundRow {
    std::size_t k = 0;
    double lhs_sup = 0.0;  // sup_X ‖x* - x_k‖_A
    double rhs = 0.0;      // error_bound(κ, k) · sup_X ‖x* - x_0‖_A
    bool holds = false;    // pointwise check at every positive-weight sample
    bool holds_sup = false;
    double margin = 0.0;            // rhs - lhs_sup
    double worst_pointwise = 0.0;   // max_x (‖x* - x_k‖_A(x) - bound(x))
};

struct BoundReport {
    std::vector<BoundRow> per_k;
    double kappa = 0.0;
    double lambda_under = 0.0;
    double lambda_over = 0.0;
    std::vector<double> kappa_per_sample;

    bool all_hold() const {
        return std::all_of(per_k.begin(), per_k.end(), [](const BoundRow& r) { return r.holds; });
    }
};

/// `tol` supplies the slack τ in ‖x* - x_k‖_A <= bound + τ, resolved against
/// sup_X ‖x* - x_0‖_A.
inline BoundReport verify_rate(const CgOutcome& outcome, const FunctionMatrix& a, const FunctionVector& x_star,
                               const ToleranceConfig& tol = {}) {
    const auto spectrum = eigen_functions(a, tol);
    if (!(spectrum.lambda_under > tol.resolve(spectrum.lambda_over)))
        throw SingularSpectrum("verify_rate: inf of the minimal eigenfunction is not positive");

    BoundReport rep;
    rep.kappa = spectrum.kappa;
    rep.lambda_under = spectrum.lambda_under;
    rep.lambda_over = spectrum.lambda_over;
    const auto kps = spectrum.kappa_per_sample();
    rep.kappa_per_sample.assign(kps.values().begin(), kps.values().end());
    if (outcome.records.empty()) return rep;

    const AlgebraElement e0 = pointwise_norm_A(sub(x_star, outcome.records.front().x), a);
    const double e0_sup = sup_over_space(e0);
    const double tau = tol.resolve(e0_sup);
    for (const auto& rec : outcome.records) {
        const double factor = error_bound(rep.kappa, static_cast<unsigned>(rec.k));
        const AlgebraElement ek = pointwise_norm_A(sub(x_star, rec.x), a);
        BoundRow row;
        row.k = rec.k;
        row.lhs_sup = sup_over_space(ek);
        row.rhs = factor * e0_sup;
        row.margin = row.rhs - row.lhs_sup;
        row.holds_sup = row.lhs_sup <= row.rhs + tau;
        row.holds = true;
        row.worst_pointwise = -std::numeric_limits<double>::infinity();
        for (std::size_t x : a.space().support()) {
            const double excess = ek[x] - factor * e0[x];
            row.worst_pointwise = std::max(row.worst_pointwise, excess);
            if (excess > tau) row.holds = false;
        }
        rep.per_k.push_back(row);
    }
    return rep;
}

}  // namespace rieszcg
