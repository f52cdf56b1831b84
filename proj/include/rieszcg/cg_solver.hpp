#pragma once

// Conjugate gradients over the algebra of sampled functions.
//
//   x_k = x_{k-1} + α_{k-1} p_{k-1}
//   r_k = b - A x_k
//   p_k = r_k - β_k p_{k-1},   β_k = (r_kᵀ A p_{k-1}) / (p_{k-1}ᵀ A p_{k-1})
//   α_k = (r_kᵀ p_k) / (p_kᵀ A p_k)
//
// Every division is an inversion in the algebra, so it needs a one-signed
// denominator. A run is feasible at step k when α_k itself is one-signed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rieszcg/function_linalg.hpp"

namespace rieszcg {

struct CgConfig {
    double residual_tol = 1e-10;        // stop when sup_X rᵀr < residual_tol²
    std::optional<std::size_t> max_iter;  // defaults to n
    ToleranceConfig tol;                // feasibility and a.e. decisions

    void validate() const {
        if (!(residual_tol > 0.0)) throw BadParameters("CgConfig: residual_tol must be positive");
        if (max_iter && *max_iter < 1) throw BadParameters("CgConfig: max_iter must be >= 1");
    }
};

struct CgIterationRecord {
    CgIterationRecord(std::size_t k_, FunctionVector x_, FunctionVector r_, FunctionVector p_, AlgebraElement alpha_,
                      AlgebraElement beta_, AlgebraElement curvature_)
        : k(k_), x(std::move(x_)), r(std::move(r_)), p(std::move(p_)), alpha(std::move(alpha_)),
          beta(std::move(beta_)), curvature(std::move(curvature_)) {}

    std::size_t k = 0;
    FunctionVector x, r, p;
    AlgebraElement alpha, beta;
    AlgebraElement curvature;  // p_kᵀ A p_k
    bool alpha_feasible = false;
    bool alpha_negative = false;  // α_k ≺ 0 on some positive-weight sample
    double residual_sup = 0.0;    // sup_X r_kᵀ r_k
    std::vector<std::size_t> failure_set;         // samples where p_{k-1}ᵀ A p_{k-1} <= τ
    std::vector<std::size_t> infeasible_samples;  // positive-weight witnesses that α_k is not in S
};

enum class CgVerdict { Successful, Infeasible, MaxIterReached };

inline const char* to_string(CgVerdict v) {
    switch (v) {
        case CgVerdict::Successful: return "Successful";
        case CgVerdict::Infeasible: return "Infeasible";
        case CgVerdict::MaxIterReached: return "MaxIterReached";
    }
    return "?";
}

struct CgOutcome {
    CgVerdict verdict = CgVerdict::MaxIterReached;
    std::size_t verdict_k = 0;  // step index the verdict refers to
    std::vector<CgIterationRecord> records;
    FunctionVector final_x;
};

namespace detail {

// Fills α_k = (r_kᵀ p_k) / (p_kᵀ A p_k) and its feasibility. Never throws on an
// infeasible step; samples where the quotient is undefined get α = 0.
inline void fill_control_term(CgIterationRecord& rec, const FunctionMatrix& a, const ToleranceConfig& tol) {
    const FunctionVector ap = matvec(a, rec.p);
    rec.curvature = dot(rec.p, ap);
    const AlgebraElement num = dot(rec.r, rec.p);
    auto denom_bad = one_sign_violations(rec.curvature, tol);
    if (denom_bad.empty()) {
        rec.alpha = num * invert(rec.curvature, tol);
        rec.infeasible_samples = one_sign_violations(rec.alpha, tol);
    } else {
        rec.alpha = num * invert_where_defined(rec.curvature, denom_bad);
        auto alpha_bad = one_sign_violations(rec.alpha, tol);
        denom_bad.insert(denom_bad.end(), alpha_bad.begin(), alpha_bad.end());
        std::sort(denom_bad.begin(), denom_bad.end());
        denom_bad.erase(std::unique(denom_bad.begin(), denom_bad.end()), denom_bad.end());
        rec.infeasible_samples = std::move(denom_bad);
    }
    rec.alpha_feasible = rec.infeasible_samples.empty();
    rec.alpha_negative = false;
    for (std::size_t i : rec.alpha.space().support())
        if (rec.alpha[i] < 0.0) rec.alpha_negative = true;
}

inline double residual_sup(const FunctionVector& r) { return std::max(0.0, sup_over_space(dot(r, r))); }

inline void require_system(const FunctionMatrix& a, const FunctionVector& b, const char* op) {
    require_compatible(a, b, op);
}

}  // namespace detail

/// r_0 = p_0 = b - A x_0, with α_0 and its feasibility.
inline CgIterationRecord cg_init(const FunctionMatrix& a, const FunctionVector& b, const FunctionVector& x0,
                                 const CgConfig& cfg = {}) {
    detail::require_system(a, b, "cg_init");
    detail::require_compatible(b, x0, "cg_init");
    auto bad = non_positive_definite_samples(a, cfg.tol);
    if (!bad.empty()) throw NotPositiveDefinite("cg_init: A is not symmetric positive definite", std::move(bad));

    const FunctionVector r0 = sub(b, matvec(a, x0));
    CgIterationRecord rec{0, x0, r0, r0, constant(b.space_ptr(), 0.0), constant(b.space_ptr(), 0.0),
                          constant(b.space_ptr(), 0.0)};
    rec.residual_sup = detail::residual_sup(rec.r);
    detail::fill_control_term(rec, a, cfg.tol);
    return rec;
}

/// One CG step from a feasible record.
inline CgIterationRecord cg_step(const FunctionMatrix& a, const FunctionVector& b, const CgIterationRecord& prev,
                                 const CgConfig& cfg = {}) {
    detail::require_system(a, b, "cg_step");
    const auto& tol = cfg.tol;
    auto denom_bad = one_sign_violations(prev.curvature, tol);
    if (!denom_bad.empty())
        throw DenominatorNotInvertible("cg_step: p_{k-1}^T A p_{k-1} is not invertible", std::move(denom_bad));
    if (!prev.alpha_feasible)
        throw InfeasibleControlTerm("cg_step: previous control term is not in S", prev.infeasible_samples);

    const AlgebraElement curvature_inv = invert(prev.curvature, tol);
    FunctionVector x = axpy(prev.x, prev.alpha, prev.p);
    FunctionVector r = sub(b, matvec(a, x));
    AlgebraElement beta = dot(r, matvec(a, prev.p)) * curvature_inv;
    FunctionVector p = sub(r, scale(beta, prev.p));

    CgIterationRecord rec{prev.k + 1, std::move(x), std::move(r), std::move(p), prev.alpha, std::move(beta),
                          prev.curvature};
    rec.residual_sup = detail::residual_sup(rec.r);

    // Υ_k, including null samples where the division was skipped.
    const double tau = tol.resolve(prev.curvature.support_max_abs());
    for (std::size_t i = 0; i < prev.curvature.size(); ++i)
        if (!(std::abs(prev.curvature[i]) > tau)) rec.failure_set.push_back(i);

    detail::fill_control_term(rec, a, tol);
    return rec;
}

/// Runs CG until the residual drops below tolerance, max_iter steps have been
/// taken, or α_k leaves S, tested in that order. The control term of the
/// last permitted step is recorded but never used.
inline CgOutcome cg_solve(const FunctionMatrix& a, const FunctionVector& b,
                          const std::optional<FunctionVector>& x0 = std::nullopt, const CgConfig& cfg = {}) {
    cfg.validate();
    const std::size_t max_iter = cfg.max_iter.value_or(a.size());
    const double stop = cfg.residual_tol * cfg.residual_tol;

    CgOutcome out{CgVerdict::MaxIterReached, 0, {}, x0.value_or(FunctionVector::zeros(b.space_ptr(), b.size()))};
    out.records.push_back(cg_init(a, b, out.final_x, cfg));
    for (;;) {
        const auto& rec = out.records.back();
        if (rec.residual_sup < stop) {
            out.verdict = CgVerdict::Successful;
            break;
        }
        if (rec.k >= max_iter) {
            out.verdict = CgVerdict::MaxIterReached;
            break;
        }
        if (!rec.alpha_feasible) {
            out.verdict = CgVerdict::Infeasible;
            break;
        }
        out.records.push_back(cg_step(a, b, rec, cfg));
    }
    out.verdict_k = out.records.back().k;
    out.final_x = out.records.back().x;
    return out;
}

/// [y, A y, ..., A^k y]
inline std::vector<FunctionVector> krylov_basis(const FunctionMatrix& a, const FunctionVector& y, std::size_t k) {
    detail::require_compatible(a, y, "krylov_basis");
    std::vector<FunctionVector> out{y};
    out.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) out.push_back(matvec(a, out.back()));
    return out;
}

struct OrthogonalityReport {
    double max_p_r = 0.0;     // sup_X |p_iᵀ r_j|, i < j
    double max_r_r = 0.0;     // sup_X |r_iᵀ r_j|, i != j
    double max_p_A_p = 0.0;   // sup_X |⟨p_i, p_j⟩_A|, i != j
    double max_krylov = 0.0;  // distance of r_j, p_j from K(A, r_0, j), relative to sup_X ‖r_0‖
    std::size_t pairs = 0;
    double scale = 0.0;       // sup_X ‖b‖₂ · sup_X ‖A‖_F

    double worst() const { return std::max({max_p_r, max_r_r, max_p_A_p}); }
};

namespace detail {

inline double sup_abs(const AlgebraElement& e) { return e.support_max_abs(); }

// Euclidean distance of v from span(basis) at one sample, by modified
// Gram-Schmidt with reorthogonalization.
inline double distance_from_span(std::vector<std::vector<double>> basis, std::vector<double> v) {
    std::vector<std::vector<double>> q;
    auto dotv = [](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    };
    double largest = 0.0;
    for (const auto& w : basis) largest = std::max(largest, std::sqrt(dotv(w, w)));
    for (auto& w : basis) {
        const double w0 = std::sqrt(dotv(w, w));
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : q) {
                const double c = dotv(e, w);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * e[i];
            }
        const double nw = std::sqrt(dotv(w, w));
        if (nw <= 1e-12 * std::max(w0, largest)) continue;
        for (double& x : w) x /= nw;
        q.push_back(std::move(w));
    }
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : q) {
            const double c = dotv(e, v);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
        }
    return std::sqrt(dotv(v, v));
}

}  // namespace detail

/// Measures the orthogonality relations and Krylov spans asserted for a
/// feasible CG run.
inline OrthogonalityReport verify_orthogonality(const CgOutcome& outcome, const FunctionMatrix& a,
                                                const FunctionVector& b) {
    OrthogonalityReport rep;
    const auto& recs = outcome.records;
    const auto& space = a.space();
    double b_sup = 0.0, a_sup = 0.0;
    for (std::size_t x : space.support()) {
        const auto bx = b.at_sample(x);
        const auto ax = a.at_sample(x);
        double sb = 0.0, sa = 0.0;
        for (double v : bx) sb += v * v;
        for (double v : ax) sa += v * v;
        b_sup = std::max(b_sup, std::sqrt(sb));
        a_sup = std::max(a_sup, std::sqrt(sa));
    }
    rep.scale = b_sup * a_sup;
    if (recs.empty()) return rep;

    std::vector<FunctionVector> ap;
    ap.reserve(recs.size());
    for (const auto& r : recs) ap.push_back(matvec(a, r.p));
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (std::size_t j = 0; j < recs.size(); ++j) {
            if (i == j) continue;
            ++rep.pairs;
            if (i < j) rep.max_p_r = std::max(rep.max_p_r, detail::sup_abs(dot(recs[i].p, recs[j].r)));
            rep.max_r_r = std::max(rep.max_r_r, detail::sup_abs(dot(recs[i].r, recs[j].r)));
            rep.max_p_A_p = std::max(rep.max_p_A_p, detail::sup_abs(dot(recs[i].p, ap[j])));
        }

    const auto kry = krylov_basis(a, recs.front().r, recs.size() - 1);
    const double r0_sup = std::sqrt(detail::residual_sup(recs.front().r));
    if (r0_sup > 0.0) {
        for (std::size_t x : space.support()) {
            std::vector<std::vector<double>> basis;
            for (std::size_t j = 0; j < recs.size(); ++j) {
                basis.push_back(kry[j].at_sample(x));
                rep.max_krylov = std::max(rep.max_krylov, detail::distance_from_span(basis, recs[j].r.at_sample(x)) / r0_sup);
                rep.max_krylov = std::max(rep.max_krylov, detail::distance_from_span(basis, recs[j].p.at_sample(x)) / r0_sup);
            }
        }
    }
    return rep;
}

}  // namespace rieszcg
