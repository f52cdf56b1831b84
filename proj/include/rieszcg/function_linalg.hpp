#pragma once

// Vectors and matrices whose entries are algebra elements.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rieszcg/chebyshev.hpp"
#include "rieszcg/jacobi.hpp"
#include "rieszcg/polynomial.hpp"
#include "rieszcg/riesz_algebra.hpp"

namespace rieszcg {

/// Element of the free module R^n.
class FunctionVector {
public:
    explicit FunctionVector(std::vector<AlgebraElement> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw DimensionMismatch("FunctionVector: dimension must be positive");
        for (const auto& e : entries_) detail::require_same_space(entries_.front().space(), e.space(), "FunctionVector");
    }

    static FunctionVector zeros(const SpacePtr& space, std::size_t n) {
        return FunctionVector(std::vector<AlgebraElement>(n, constant(space, 0.0)));
    }

    static FunctionVector constants(const SpacePtr& space, const std::vector<double>& values) {
        std::vector<AlgebraElement> e;
        e.reserve(values.size());
        for (double v : values) e.push_back(constant(space, v));
        return FunctionVector(std::move(e));
    }

    /// Standard basis vector e_i.
    static FunctionVector unit(const SpacePtr& space, std::size_t n, std::size_t i) {
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        return constants(space, v);
    }

    /// `rows[i][x]` is entry i at sample x.
    static FunctionVector from_rows(const SpacePtr& space, const std::vector<std::vector<double>>& rows) {
        std::vector<AlgebraElement> e;
        e.reserve(rows.size());
        for (const auto& r : rows) e.emplace_back(space, r);
        return FunctionVector(std::move(e));
    }

    std::size_t size() const noexcept { return entries_.size(); }
    const AlgebraElement& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<AlgebraElement>& entries() const noexcept { return entries_; }
    const SpacePtr& space_ptr() const noexcept { return entries_.front().space_ptr(); }
    const MeasureSpace& space() const noexcept { return entries_.front().space(); }

    /// The numeric vector at one sample point.
    std::vector<double> at_sample(std::size_t x) const {
        std::vector<double> v(entries_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = entries_[i][x];
        return v;
    }

private:
    std::vector<AlgebraElement> entries_;
};

/// n x n matrix over R, row-major.
class FunctionMatrix {
public:
    FunctionMatrix(std::size_t n, std::vector<AlgebraElement> entries) : n_(n), entries_(std::move(entries)) {
        if (n_ == 0) throw DimensionMismatch("FunctionMatrix: dimension must be positive");
        if (entries_.size() != n_ * n_) throw DimensionMismatch("FunctionMatrix: expected n*n entries");
        for (const auto& e : entries_) detail::require_same_space(entries_.front().space(), e.space(), "FunctionMatrix");
    }

    static FunctionMatrix constants(const SpacePtr& space, std::size_t n, const std::vector<double>& row_major) {
        if (row_major.size() != n * n) throw DimensionMismatch("FunctionMatrix::constants: expected n*n values");
        std::vector<AlgebraElement> e;
        e.reserve(n * n);
        for (double v : row_major) e.push_back(constant(space, v));
        return FunctionMatrix(n, std::move(e));
    }

    static FunctionMatrix identity(const SpacePtr& space, std::size_t n) {
        std::vector<double> v(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
        return constants(space, n, v);
    }

    /// Builds the matrix from one numeric row-major matrix per sample.
    static FunctionMatrix from_samples(const SpacePtr& space, std::size_t n,
                                       const std::vector<std::vector<double>>& per_sample) {
        if (per_sample.size() != space->size()) throw DimensionMismatch("FunctionMatrix::from_samples: one matrix per sample");
        std::vector<AlgebraElement> e;
        e.reserve(n * n);
        for (std::size_t ij = 0; ij < n * n; ++ij) {
            std::vector<double> vals(space->size());
            for (std::size_t x = 0; x < space->size(); ++x) vals[x] = per_sample[x].at(ij);
            e.emplace_back(space, std::move(vals));
        }
        return FunctionMatrix(n, std::move(e));
    }

    std::size_t size() const noexcept { return n_; }
    const AlgebraElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<AlgebraElement>& entries() const noexcept { return entries_; }
    const SpacePtr& space_ptr() const noexcept { return entries_.front().space_ptr(); }
    const MeasureSpace& space() const noexcept { return entries_.front().space(); }

    /// Row-major numeric matrix at one sample point.
    std::vector<double> at_sample(std::size_t x) const {
        std::vector<double> m(entries_.size());
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = entries_[k][x];
        return m;
    }

    double support_max_abs() const {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, e.support_max_abs());
        return m;
    }

private:
    std::size_t n_;
    std::vector<AlgebraElement> entries_;
};

namespace detail {
inline void require_compatible(const FunctionVector& x, const FunctionVector& y, const char* op) {
    if (x.size() != y.size()) throw DimensionMismatch(std::string(op) + ": vector dimensions differ");
    require_same_space(x.space(), y.space(), op);
}

inline void require_compatible(const FunctionMatrix& a, const FunctionVector& x, const char* op) {
    if (a.size() != x.size()) throw DimensionMismatch(std::string(op) + ": matrix and vector dimensions differ");
    require_same_space(a.space(), x.space(), op);
}

template <class F>
FunctionVector zip_entries(const FunctionVector& x, const FunctionVector& y, F&& f, const char* op) {
    require_compatible(x, y, op);
    std::vector<AlgebraElement> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(f(x[i], y[i]));
    return FunctionVector(std::move(out));
}
}  // namespace detail

// module operations

inline FunctionVector add(const FunctionVector& x, const FunctionVector& y) {
    return detail::zip_entries(x, y, [](const auto& a, const auto& b) { return a + b; }, "add");
}

inline FunctionVector sub(const FunctionVector& x, const FunctionVector& y) {
    return detail::zip_entries(x, y, [](const auto& a, const auto& b) { return a - b; }, "sub");
}

/// c · x for a ring element c.
inline FunctionVector scale(const AlgebraElement& c, const FunctionVector& x) {
    std::vector<AlgebraElement> out;
    out.reserve(x.size());
    for (const auto& e : x.entries()) out.push_back(c * e);
    return FunctionVector(std::move(out));
}

inline FunctionVector scale(double c, const FunctionVector& x) {
    std::vector<AlgebraElement> out;
    out.reserve(x.size());
    for (const auto& e : x.entries()) out.push_back(c * e);
    return FunctionVector(std::move(out));
}

/// x + c · y
inline FunctionVector axpy(const FunctionVector& x, const AlgebraElement& c, const FunctionVector& y) {
    return detail::zip_entries(x, y, [&c](const auto& a, const auto& b) { return a + c * b; }, "axpy");
}

/// xᵀy as an algebra element.
inline AlgebraElement dot(const FunctionVector& x, const FunctionVector& y) {
    detail::require_compatible(x, y, "dot");
    AlgebraElement acc = x[0] * y[0];
    for (std::size_t i = 1; i < x.size(); ++i) acc = acc + x[i] * y[i];
    return acc;
}

inline FunctionVector matvec(const FunctionMatrix& a, const FunctionVector& x) {
    detail::require_compatible(a, x, "matvec");
    const std::size_t n = a.size();
    std::vector<AlgebraElement> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        AlgebraElement acc = a(i, 0) * x[0];
        for (std::size_t j = 1; j < n; ++j) acc = acc + a(i, j) * x[j];
        out.push_back(std::move(acc));
    }
    return FunctionVector(std::move(out));
}

/// ⟨x, y⟩_A = xᵀ A y
inline AlgebraElement dot_A(const FunctionVector& x, const FunctionVector& y, const FunctionMatrix& a) {
    detail::require_compatible(x, y, "dot_A");
    return dot(x, matvec(a, y));
}

/// Every entry is a.e. zero.
inline bool is_ae_zero(const FunctionVector& x, const ToleranceConfig& tol = {}) {
    return std::all_of(x.entries().begin(), x.entries().end(), [&](const auto& e) { return is_ae_zero(e, tol); });
}

/// ‖x‖_A = sqrt(⟨x, x⟩_A), and ‖0‖_A = 0. Requires ⟨x, x⟩_A ≻ 0 whenever x is
/// not a.e. zero.
inline AlgebraElement norm_A(const FunctionVector& x, const FunctionMatrix& a, const ToleranceConfig& tol = {}) {
    if (is_ae_zero(x, tol)) return constant(x.space_ptr(), 0.0);
    const AlgebraElement q = dot_A(x, x, a);
    auto bad = non_positive_samples(q, tol);
    if (!bad.empty()) throw NotPositiveDefinite("norm_A: <x, x>_A is not strictly positive", std::move(bad));
    return sqrt_strict(q, tol);
}

/// sqrt(max(⟨x, x⟩_A, 0)) sample by sample. Agrees with norm_A wherever that
/// is defined and is also total on vectors that vanish on part of the space,
/// which is what error measurements need.
inline AlgebraElement pointwise_norm_A(const FunctionVector& x, const FunctionMatrix& a) {
    return dot_A(x, x, a).map([](double v) { return std::sqrt(std::max(v, 0.0)); });
}

inline bool is_symmetric(const FunctionMatrix& a, const ToleranceConfig& tol = {}) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!ae_equal(a(i, j), a(j, i), tol)) return false;
    return true;
}

/// Positive-weight samples at which A(x) is not symmetric positive definite:
/// either asymmetric beyond the threshold or with minimum eigenvalue <= τ.
/// τ is resolved against the largest entry magnitude of the whole matrix.
inline std::vector<std::size_t> non_positive_definite_samples(const FunctionMatrix& a, const ToleranceConfig& tol = {}) {
    const std::size_t n = a.size();
    const double tau = tol.resolve(a.support_max_abs());
    std::vector<std::size_t> bad;
    for (std::size_t x : a.space().support()) {
        const auto m = a.at_sample(x);
        bool symmetric = true;
        for (std::size_t i = 0; i < n && symmetric; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(m[i * n + j] - m[j * n + i]) > tau) {
                    symmetric = false;
                    break;
                }
        if (!symmetric) {
            bad.push_back(x);
            continue;
        }
        const auto es = jacobi::decompose(m, n);
        if (!es.converged || !(es.values.front() > tau)) bad.push_back(x);
    }
    return bad;
}

inline bool is_positive_definite(const FunctionMatrix& a, const ToleranceConfig& tol = {}) {
    return non_positive_definite_samples(a, tol).empty();
}

/// Ordered eigenvalue functions and eigenvector functions of a symmetric matrix.
struct SpectralSummary {
    std::vector<AlgebraElement> lambdas;  // λ_1 <= ... <= λ_n at every sample
    std::vector<FunctionVector> eigvecs;  // eigvecs[j] belongs to lambdas[j]
    double lambda_under = 0.0;            // inf over X of λ_1
    double lambda_over = 0.0;             // sup over X of λ_n
    double kappa = std::numeric_limits<double>::infinity();

    /// λ_n(x) / λ_1(x), reported for diagnostics. Zero where λ_1(x) <= 0.
    AlgebraElement kappa_per_sample() const {
        return lambdas.back().zip(lambdas.front(), [](double hi, double lo) { return lo > 0.0 ? hi / lo : 0.0; },
                                  "kappa_per_sample");
    }
};

/// Per-sample Jacobi eigendecomposition assembled into functions. Null samples
/// are diagonalized too (from the symmetric part of A there).
inline SpectralSummary eigen_functions(const FunctionMatrix& a, const ToleranceConfig& tol = {}) {
    if (!is_symmetric(a, tol)) throw NotSymmetric("eigen_functions: matrix is not symmetric a.e.");
    const std::size_t n = a.size();
    const std::size_t m = a.space().size();
    std::vector<std::vector<double>> lam(n, std::vector<double>(m));
    std::vector<std::vector<std::vector<double>>> vec(n, std::vector<std::vector<double>>(n, std::vector<double>(m)));
    for (std::size_t x = 0; x < m; ++x) {
        const auto es = jacobi::decompose(a.at_sample(x), n);
        if (!es.converged && !a.space().is_null(x))
            throw EigenNoConvergence("eigen_functions: Jacobi sweeps did not converge", {x});
        for (std::size_t j = 0; j < n; ++j) {
            lam[j][x] = es.values[j];
            for (std::size_t i = 0; i < n; ++i) vec[j][i][x] = es.vectors[i * n + j];
        }
    }
    SpectralSummary out;
    for (std::size_t j = 0; j < n; ++j) {
        out.lambdas.emplace_back(a.space_ptr(), std::move(lam[j]));
        out.eigvecs.push_back(FunctionVector::from_rows(a.space_ptr(), vec[j]));
    }
    out.lambda_under = inf_over_space(out.lambdas.front());
    out.lambda_over = sup_over_space(out.lambdas.back());
    if (out.lambda_under > 0.0) out.kappa = out.lambda_over / out.lambda_under;
    return out;
}

/// q(A) x by Horner's rule over the algebra.
inline FunctionVector poly_apply(const AlgebraPolynomial& q, const FunctionMatrix& a, const FunctionVector& x) {
    const auto& c = q.coeffs();
    FunctionVector acc = scale(c.back(), x);
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = axpy(matvec(a, acc), c[i], x);
    return acc;
}

struct PolyBoundCheck {
    AlgebraElement lhs;  // ‖q(A) x‖_A
    double rhs_scalar;   // M^A(q) over [λ̲, λ̄]
};

/// Both sides of ‖q(A)x‖_A <= M^A(q) ‖x‖_A. The caller compares
/// sup_over_space(lhs) against rhs_scalar * sup_over_space(‖x‖_A).
inline PolyBoundCheck poly_apply_bound_check(const AlgebraPolynomial& q, const FunctionMatrix& a,
                                             const FunctionVector& x, std::size_t grid = kDefaultSupGrid,
                                             const ToleranceConfig& tol = {}) {
    const auto spectrum = eigen_functions(a, tol);
    if (!(spectrum.lambda_under > tol.resolve(spectrum.lambda_over)))
        throw NotPositiveDefinite("poly_apply_bound_check: lambda_under is not positive", {});
    const auto y = poly_apply(q, a, x);
    return {pointwise_norm_A(y, a), M_sup_A(q, spectrum.lambda_under, spectrum.lambda_over, grid)};
}

/// Result of splitting a symmetric bilinear form into an orthogonal sum of
/// rank-one pieces with invertible self-pairing and a leftover part.
struct FormDecomposition {
    std::vector<FunctionVector> ortho_basis;    // b(x_i, x_i) in S, b(x_i, x_j) = 0 a.e.
    std::vector<FunctionVector> radical_basis;  // generators never made invertible
    std::vector<AlgebraElement> pivots;         // b(x_i, x_i)

    /// Pairings b(u, v) over ortho_basis followed by radical_basis.
    FunctionMatrix gram(const FunctionMatrix& b) const {
        std::vector<FunctionVector> all = ortho_basis;
        all.insert(all.end(), radical_basis.begin(), radical_basis.end());
        const std::size_t k = all.size();
        std::vector<AlgebraElement> g;
        g.reserve(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) g.push_back(dot_A(all[i], all[j], b));
        return FunctionMatrix(k, std::move(g));
    }
};

/// Gram-Schmidt over the algebra from the standard basis. The next pivot is
/// the remaining generator whose self-pairing lies in S with the largest
/// inf |b(v, v)|. When no single generator qualifies, sums of two remaining
/// generators are tried (this splits off hyperbolic planes, where every
/// generator is isotropic). Whatever is left spans the radical part.
inline FormDecomposition orthogonal_decompose(const FunctionMatrix& b, const ToleranceConfig& tol = {}) {
    if (!is_symmetric(b, tol)) throw NotSymmetric("orthogonal_decompose: form is not symmetric a.e.");
    const std::size_t n = b.size();
    const auto& space = b.space_ptr();
    std::vector<FunctionVector> remaining;
    for (std::size_t i = 0; i < n; ++i) remaining.push_back(FunctionVector::unit(space, n, i));

    FormDecomposition out;
    while (!remaining.empty()) {
        std::size_t best = remaining.size();
        double best_score = -1.0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const auto d = dot_A(remaining[i], remaining[i], b);
            if (!in_S(d, tol)) continue;
            const double score = inf_over_space(abs(d));
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == remaining.size()) {
            // Every remaining generator is isotropic; look for a pair u + w.
            std::size_t partner = remaining.size();
            for (std::size_t i = 0; i < remaining.size(); ++i)
                for (std::size_t j = i + 1; j < remaining.size(); ++j) {
                    const auto sum = add(remaining[i], remaining[j]);
                    const auto d = dot_A(sum, sum, b);
                    if (!in_S(d, tol)) continue;
                    const double score = inf_over_space(abs(d));
                    if (score > best_score) {
                        best_score = score;
                        best = i;
                        partner = j;
                    }
                }
            if (best == remaining.size()) break;
            remaining[best] = add(remaining[best], remaining[partner]);
        }
        FunctionVector pivot = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        AlgebraElement d = dot_A(pivot, pivot, b);
        const AlgebraElement d_inv = invert(d, tol);
        const FunctionVector b_pivot = matvec(b, pivot);
        for (auto& u : remaining) {
            const AlgebraElement coeff = dot(u, b_pivot) * d_inv;
            u = axpy(u, -coeff, pivot);
        }
        out.ortho_basis.push_back(std::move(pivot));
        out.pivots.push_back(std::move(d));
    }
    out.radical_basis = std::move(remaining);
    return out;
}

}  // namespace rieszcg
