#pragma once

// Independent per-sample reference: a direct solve and a plain scalar CG run
// at each positive-weight sample. Works on raw numeric arrays only and shares
// no code with the algebra-valued solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rieszcg/harness/problem.hpp"

namespace rieszcg {

struct ScalarCgIterate {
    std::vector<double> x, r, p;
    double alpha = 0.0;
};

struct SampleTrace {
    std::size_t sample = 0;
    std::vector<ScalarCgIterate> iterations;
};

struct OracleResult {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::vector<double>> x_star;  // x_star[i][x]; zero at null samples
    std::vector<SampleTrace> per_sample_traces;

    FunctionVector per_sample_solutions(const SpacePtr& space) const { return FunctionVector::from_rows(space, x_star); }
};

namespace oracle {

/// Gaussian elimination with partial pivoting on a row-major n x n system.
/// Returns false when a pivot falls below 1e-14 times the largest entry.
inline bool direct_solve(std::vector<double> a, std::vector<double> b, std::size_t n, std::vector<double>& out) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
        if (std::abs(a[piv * n + col]) <= 1e-14 * scale) return false;
        if (piv != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
            b[row] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * out[k];
        out[i] = s / a[i * n + i];
    }
    return true;
}

/// Scalar CG with the same recurrences the algebra solver uses, written out
/// directly over doubles. Quotients are products with the reciprocal, as in
/// the algebra. Runs `steps` steps unless a curvature p_kᵀAp_k vanishes first.
inline std::vector<ScalarCgIterate> scalar_cg(const std::vector<double>& a, const std::vector<double>& b,
                                              const std::vector<double>& x0, std::size_t n, std::size_t steps) {
    auto mul = [&](const std::vector<double>& v) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = a[i * n] * v[0];
            for (std::size_t j = 1; j < n; ++j) s += a[i * n + j] * v[j];
            out[i] = s;
        }
        return out;
    };
    auto inner = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double s = u[0] * v[0];
        for (std::size_t i = 1; i < n; ++i) s += u[i] * v[i];
        return s;
    };

    std::vector<ScalarCgIterate> it;
    ScalarCgIterate cur;
    cur.x = x0;
    const auto ax0 = mul(x0);
    cur.r.resize(n);
    for (std::size_t i = 0; i < n; ++i) cur.r[i] = b[i] - ax0[i];
    cur.p = cur.r;
    auto ap = mul(cur.p);
    double curv = inner(cur.p, ap);
    cur.alpha = curv != 0.0 ? inner(cur.r, cur.p) * (1.0 / curv) : 0.0;
    it.push_back(cur);

    for (std::size_t k = 1; k <= steps && curv != 0.0; ++k) {
        const ScalarCgIterate& prev = it.back();
        ScalarCgIterate next;
        next.x.resize(n);
        for (std::size_t i = 0; i < n; ++i) next.x[i] = prev.x[i] + prev.alpha * prev.p[i];
        const auto ax = mul(next.x);
        next.r.resize(n);
        for (std::size_t i = 0; i < n; ++i) next.r[i] = b[i] - ax[i];
        const double beta = inner(next.r, ap) * (1.0 / curv);
        next.p.resize(n);
        for (std::size_t i = 0; i < n; ++i) next.p[i] = next.r[i] - beta * prev.p[i];
        ap = mul(next.p);
        curv = inner(next.p, ap);
        next.alpha = curv != 0.0 ? inner(next.r, next.p) * (1.0 / curv) : 0.0;
        it.push_back(std::move(next));
    }
    return it;
}

}  // namespace oracle

/// Direct solve plus scalar CG at every positive-weight sample. `steps`
/// defaults to n.
inline OracleResult pointwise_oracle(const Problem& p, std::size_t steps = 0) {
    const std::size_t n = p.n(), m = p.m();
    if (steps == 0) steps = n;
    OracleResult out;
    out.n = n;
    out.m = m;
    out.x_star.assign(n, std::vector<double>(m, 0.0));
    const FunctionVector x0 = p.initial_guess();
    std::vector<std::size_t> singular;
    for (std::size_t x : p.space->support()) {
        const auto a = p.A.at_sample(x);
        const auto b = p.b.at_sample(x);
        std::vector<double> sol;
        if (!oracle::direct_solve(a, b, n, sol)) {
            singular.push_back(x);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) out.x_star[i][x] = sol[i];
        out.per_sample_traces.push_back({x, oracle::scalar_cg(a, b, x0.at_sample(x), n, steps)});
    }
    if (!singular.empty()) throw SingularSample("pointwise_oracle: numerically singular sample matrix", singular);
    return out;
}

}  // namespace rieszcg
