#pragma once

// Seeded generators for function-valued SPD systems A(x) = C + E(x).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rieszcg/function_linalg.hpp"

namespace rieszcg {

struct ProblemMetadata {
    std::string generator = "manual";
    std::uint64_t seed = 0;
    double kappa_target = 1.0;
    double perturbation = 0.0;
    std::string mode = "random";
};

struct Problem {
    SpacePtr space;
    FunctionMatrix A;
    FunctionVector b;
    std::optional<FunctionVector> x0;
    ProblemMetadata metadata;

    std::size_t n() const { return A.size(); }
    std::size_t m() const { return space->size(); }
    FunctionVector initial_guess() const { return x0.value_or(FunctionVector::zeros(space, n())); }
};

/// Throws ValidationError naming the offending field.
inline void validate_problem(const Problem& p, const ToleranceConfig& tol = {}) {
    if (!p.A.space().same_as(*p.space)) throw ValidationError("A.space", "matrix lives on a different space");
    if (p.b.size() != p.A.size()) throw ValidationError("b.shape", "length does not match A");
    if (!p.b.space().same_as(*p.space)) throw ValidationError("b.space", "vector lives on a different space");
    if (p.x0) {
        if (p.x0->size() != p.A.size()) throw ValidationError("x0.shape", "length does not match A");
        if (!p.x0->space().same_as(*p.space)) throw ValidationError("x0.space", "vector lives on a different space");
    }
    if (!is_symmetric(p.A, tol)) throw ValidationError("A.symmetry", "A is not symmetric on a set of positive measure");
    if (!is_positive_definite(p.A, tol))
        throw ValidationError("A.positive_definite", "A(x) is not positive definite on a set of positive measure");
}

namespace detail {

// Uniform doubles from the 53 high bits of a fully specified engine, so a
// seed reproduces the same problem on every standard library.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double symmetric() { return 2.0 * unit() - 1.0; }

private:
    std::mt19937_64 engine_;
};

// Columns of a random orthogonal matrix, row-major.
inline std::vector<double> random_orthogonal(std::size_t n, UniformSource& rng) {
    std::vector<double> q(n * n);
    for (;;) {
        for (double& v : q) v = rng.symmetric();
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            for (std::size_t pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    double c = 0.0;
                    for (std::size_t i = 0; i < n; ++i) c += q[i * n + k] * q[i * n + j];
                    for (std::size_t i = 0; i < n; ++i) q[i * n + j] -= c * q[i * n + k];
                }
            double nrm = 0.0;
            for (std::size_t i = 0; i < n; ++i) nrm += q[i * n + j] * q[i * n + j];
            nrm = std::sqrt(nrm);
            if (nrm < 1e-3) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) q[i * n + j] /= nrm;
        }
        if (ok) return q;
    }
}

// Q diag(mu) Qᵀ, exactly symmetric.
inline std::vector<double> spectral_matrix(const std::vector<double>& q, const std::vector<double>& mu) {
    const std::size_t n = mu.size();
    std::vector<double> c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q[i * n + k] * mu[k] * q[j * n + k];
            c[i * n + j] = c[j * n + i] = s;
        }
    return c;
}

inline std::vector<double> geometric_spectrum(std::size_t n, double lo, double hi) {
    std::vector<double> mu(n, lo);
    for (std::size_t i = 1; i < n; ++i)
        mu[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    if (n > 1) mu.back() = hi;
    return mu;
}

}  // namespace detail

/// Random mode: constant core C = Q diag(μ) Qᵀ with μ geometric in [1, μ_max],
/// plus a symmetric perturbation E(x) with ‖E(x)‖_F = perturbation · μ_min at
/// every sample, so A(x) stays SPD. μ_max is bisected until the global
/// condition number of A equals kappa_target. If C = I already overshoots,
/// μ_max stays 1 and the perturbation is shrunk instead; metadata records the
/// size used. b is uniform in [-1, 1] per entry and sample; weights are uniform.
///
/// Mirrored mode: a two-sample space with A = C at both samples, b random at
/// sample 0 and an eigenvector of C at sample 1. Sample 1 converges after one
/// step while sample 0 does not, so α_1 cannot be one-signed.
inline Problem generate_problem(std::size_t n, std::size_t m, double kappa_target, double perturbation,
                                std::uint64_t seed, const std::string& mode = "random") {
    if (n < 1) throw BadParameters("generate_problem: n must be >= 1");
    if (m < 1) throw BadParameters("generate_problem: samples must be >= 1");
    if (!(kappa_target >= 1.0) || !std::isfinite(kappa_target))
        throw BadParameters("generate_problem: kappa must be a finite value >= 1");
    if (!(perturbation >= 0.0 && perturbation < 1.0))
        throw BadParameters("generate_problem: perturbation must lie in [0, 1)");
    if (mode != "random" && mode != "mirrored") throw BadParameters("generate_problem: unknown mode '" + mode + "'");

    detail::UniformSource rng(seed);
    ProblemMetadata meta{"generate_problem", seed, kappa_target, perturbation, mode};

    if (mode == "mirrored") {
        if (n < 2) throw BadParameters("generate_problem: mirrored mode needs n >= 2");
        const auto q = detail::random_orthogonal(n, rng);
        const auto c = detail::spectral_matrix(q, detail::geometric_spectrum(n, 1.0, kappa_target > 1.0 ? kappa_target : 2.0));
        auto space = make_space({0.5, 0.5}, {"generic", "eigenvector"});
        std::vector<std::vector<double>> b_rows(n, std::vector<double>(2));
        for (std::size_t i = 0; i < n; ++i) {
            b_rows[i][0] = rng.symmetric();
            b_rows[i][1] = q[i * n + 0];
        }
        meta.perturbation = 0.0;
        return Problem{space, FunctionMatrix::from_samples(space, n, {c, c}), FunctionVector::from_rows(space, b_rows),
                       std::nullopt, meta};
    }

    const double p = perturbation;
    const auto q = detail::random_orthogonal(n, rng);
    std::vector<std::vector<double>> e(m, std::vector<double>(n * n, 0.0));
    if (p > 0.0) {
        for (auto& ex : e) {
            double frob = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    const double v = rng.symmetric();
                    ex[i * n + j] = ex[j * n + i] = v;
                    frob += (i == j ? 1.0 : 2.0) * v * v;
                }
            frob = std::sqrt(frob);
            if (frob > 0.0)
                for (double& v : ex) v /= frob;
        }
    }

    auto assemble = [&](double mu_max, double size) {
        const auto c = detail::spectral_matrix(q, detail::geometric_spectrum(n, 1.0, mu_max));
        std::vector<std::vector<double>> out(m, c);
        if (size > 0.0)
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t k = 0; k < n * n; ++k) out[x][k] += size * e[x][k];
        return out;
    };
    auto global_kappa = [&](double mu_max, double size) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& a : assemble(mu_max, size)) {
            const auto es = jacobi::decompose(a, n);
            lo = std::min(lo, es.values.front());
            hi = std::max(hi, es.values.back());
        }
        return hi / lo;
    };
    // Bisection for kappa(t) = kappa_target on [lo, hi], kappa(lo) <= target <= kappa(hi).
    auto solve_for = [&](auto&& kappa_of, double lo, double hi) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double k = kappa_of(mid);
            if (std::abs(k - kappa_target) <= 1e-9 * kappa_target) return mid;
            (k < kappa_target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    double mu_max = kappa_target, size = p;
    if (kappa_target == 1.0) {
        size = 0.0;
    } else if (p > 0.0 && n > 1) {
        if (global_kappa(1.0, p) >= kappa_target) {
            mu_max = 1.0;
            size = solve_for([&](double s) { return global_kappa(1.0, s); }, 0.0, p);
        } else {
            double hi = std::max(2.0, kappa_target);
            while (global_kappa(hi, p) < kappa_target) hi *= 2.0;
            mu_max = solve_for([&](double mu) { return global_kappa(mu, p); }, 1.0, hi);
        }
    }
    meta.perturbation = size;

    auto space = make_space(std::vector<double>(m, 1.0 / static_cast<double>(m)));
    const auto per_sample = assemble(mu_max, size);
    std::vector<std::vector<double>> b_rows(n, std::vector<double>(m));
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t i = 0; i < n; ++i) b_rows[i][x] = rng.symmetric();
    return Problem{space, FunctionMatrix::from_samples(space, n, per_sample), FunctionVector::from_rows(space, b_rows),
                   std::nullopt, meta};
}

}  // namespace rieszcg
