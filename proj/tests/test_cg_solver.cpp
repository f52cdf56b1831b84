#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rieszcg/cg_solver.hpp"

using namespace rieszcg;

namespace {

std::vector<double> gauss_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

std::vector<double> random_spd(std::mt19937_64& rng, std::size_t n, double shift) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> m(n * n), a(n * n, 0.0);
    for (double& v : m) v = u(rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) a[i * n + j] += m[i * n + k] * m[j * n + k];
            if (i == j) a[i * n + j] += shift;
        }
    return a;
}

struct System {
    SpacePtr space;
    FunctionMatrix a;
    FunctionVector b;
};

System random_system(std::uint64_t seed, std::size_t n, std::size_t m) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    auto s = make_space(std::vector<double>(m, 1.0 / m));
    std::vector<std::vector<double>> per(m);
    for (auto& a : per) a = random_spd(rng, n, 1.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (auto& r : rows)
        for (double& v : r) v = u(rng);
    return {s, FunctionMatrix::from_samples(s, n, per), FunctionVector::from_rows(s, rows)};
}

}  // namespace

TEST(CgConfig, Validation) {
    CgConfig c;
    EXPECT_NO_THROW(c.validate());
    c.residual_tol = 0;
    EXPECT_THROW(c.validate(), BadParameters);
    c.residual_tol = 1e-10;
    c.max_iter = 0;
    EXPECT_THROW(c.validate(), BadParameters);
}

TEST(CgInit, Examples) {
    auto sys = random_system(1, 3, 4);
    const auto r0 = cg_init(sys.a, sys.b, FunctionVector::zeros(sys.space, 3));
    EXPECT_EQ(r0.k, 0u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(ae_equal(r0.r[i], sys.b[i]));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(ae_equal(r0.p[i], r0.r[i]));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<std::vector<double>> rows(3, std::vector<double>(4));
    for (auto& r : rows)
        for (double& v : r) v = u(rng);
    const auto x0 = FunctionVector::from_rows(sys.space, rows);
    const auto rec = cg_init(sys.a, sys.b, x0);
    for (std::size_t x = 0; x < 4; ++x) {
        const auto a = sys.a.at_sample(x);
        for (std::size_t i = 0; i < 3; ++i) {
            double expect = sys.b[i][x];
            for (std::size_t j = 0; j < 3; ++j) expect -= a[i * 3 + j] * rows[j][x];
            EXPECT_NEAR(rec.r[i][x], expect, 1e-14);
        }
    }
}

TEST(CgInit, ExactGuessIsImmediateSuccess) {
    auto s = make_space({1, 1});
    const auto a = FunctionMatrix::constants(s, 2, {4, 1, 1, 3});
    const auto xs = FunctionVector::constants(s, {1.0 / 11, 7.0 / 11});
    const auto b = matvec(a, xs);
    const auto out = cg_solve(a, b, xs);
    EXPECT_EQ(out.verdict, CgVerdict::Successful);
    EXPECT_EQ(out.verdict_k, 0u);
    EXPECT_EQ(out.records.size(), 1u);
}

TEST(CgInit, Errors) {
    auto s = make_space({1, 1});
    EXPECT_THROW(cg_init(FunctionMatrix::constants(s, 2, {1, 2, 2, 1}), FunctionVector::unit(s, 2, 0),
                         FunctionVector::zeros(s, 2)),
                 NotPositiveDefinite);
    EXPECT_THROW(cg_init(FunctionMatrix::identity(s, 2), FunctionVector::unit(s, 3, 0), FunctionVector::zeros(s, 3)),
                 DimensionMismatch);
}

TEST(CgStep, IdentityOneStep) {
    auto s = make_space({1, 1, 1});
    const auto b = FunctionVector::from_rows(s, {{1, 2, 3}, {-1, 0.5, 4}});
    const auto r0 = cg_init(FunctionMatrix::identity(s, 2), b, FunctionVector::zeros(s, 2));
    EXPECT_TRUE(ae_equal(r0.alpha, constant(s, 1)));
    const auto r1 = cg_step(FunctionMatrix::identity(s, 2), b, r0);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(ae_equal(r1.x[i], b[i]));
    EXPECT_EQ(r1.residual_sup, 0.0);
}

TEST(CgStep, ZeroRightHandSideTakesNoStep) {
    auto s = make_space({1, 1});
    const auto out = cg_solve(FunctionMatrix::identity(s, 2), FunctionVector::zeros(s, 2));
    EXPECT_EQ(out.verdict, CgVerdict::Successful);
    EXPECT_EQ(out.records.size(), 1u);
}

TEST(CgStep, TwoByTwoDirectSolve) {
    auto s = make_space({1, 1});
    const std::vector<double> am{4, 1, 1, 3}, bv{1, 2};
    const auto xs = gauss_solve(am, bv);
    EXPECT_NEAR(xs[0], 1.0 / 11, 1e-15);
    EXPECT_NEAR(xs[1], 7.0 / 11, 1e-15);
    const auto a = FunctionMatrix::constants(s, 2, am);
    const auto b = FunctionVector::constants(s, bv);
    auto rec = cg_init(a, b, FunctionVector::zeros(s, 2));
    rec = cg_step(a, b, rec);
    rec = cg_step(a, b, rec);
    EXPECT_EQ(rec.k, 2u);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(rec.x[i][0], xs[i], 1e-14);
}

TEST(CgStep, RefusesInfeasiblePredecessor) {
    auto s = make_space({1, 1});
    const auto a = FunctionMatrix::identity(s, 2);
    const auto b = FunctionVector::from_rows(s, {{1, 0}, {0, 0}});
    const auto r0 = cg_init(a, b, FunctionVector::zeros(s, 2));
    EXPECT_FALSE(r0.alpha_feasible);
    EXPECT_THROW(cg_step(a, b, r0), DenominatorNotInvertible);
}

TEST(CgSolve, FiniteTermination) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = make_space({1});
        const auto a = FunctionMatrix::constants(s, 5, random_spd(rng, 5, 1.0));
        std::vector<double> bv(5);
        for (double& v : bv) v = std::uniform_real_distribution<double>(-1, 1)(rng);
        const auto out = cg_solve(a, FunctionVector::constants(s, bv));
        EXPECT_EQ(out.verdict, CgVerdict::Successful);
        EXPECT_LE(out.verdict_k, 5u);
    }
}

TEST(CgSolve, DiagonalFunctions) {
    auto s = make_space({1, 1, 1, 0});
    const std::vector<double> d0{1, 2, 3, 4}, d1{5, 0.5, 2, 7};
    const AlgebraElement zero = constant(s, 0.0);
    const FunctionMatrix a(2, {AlgebraElement(s, d0), zero, zero, AlgebraElement(s, d1)});
    const auto b = FunctionVector::from_rows(s, {{1, -1, 2, 3}, {0.5, 2, -3, 1}});
    const auto out = cg_solve(a, b);
    ASSERT_EQ(out.verdict, CgVerdict::Successful);
    for (std::size_t x : s->support()) {
        EXPECT_NEAR(out.final_x[0][x], b[0][x] / d0[x], 1e-12);
        EXPECT_NEAR(out.final_x[1][x], b[1][x] / d1[x], 1e-12);
    }
    EXPECT_TRUE(ae_equal(out.final_x[0], b[0] * invert(AlgebraElement(s, d0))));
}

TEST(CgSolve, MaxIterReached) {
    auto sys = random_system(3, 6, 3);
    CgConfig cfg;
    cfg.max_iter = 2;
    const auto out = cg_solve(sys.a, sys.b, std::nullopt, cfg);
    EXPECT_EQ(out.verdict, CgVerdict::MaxIterReached);
    EXPECT_EQ(out.verdict_k, 2u);
}

TEST(CgSolve, InfeasibleWhenOneSampleFinishesEarly) {
    // sample 1 has b along an eigenvector, so it converges after one step
    auto s = make_space({0.5, 0.5});
    const auto a = FunctionMatrix::constants(s, 2, {2, 0, 0, 5});
    const auto b = FunctionVector::from_rows(s, {{1, 1}, {1, 0}});
    const auto out = cg_solve(a, b);
    EXPECT_EQ(out.verdict, CgVerdict::Infeasible);
    EXPECT_EQ(out.verdict_k, 1u);
    EXPECT_FALSE(out.records.back().alpha_feasible);
    EXPECT_EQ(out.records.back().infeasible_samples, (std::vector<std::size_t>{1}));
    EXPECT_EQ(out.records.back().failure_set, (std::vector<std::size_t>{}));
}

TEST(CgSolve, Invariants) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto sys = random_system(100 + seed, 2 + seed % 5, 1 + seed % 6);
        const auto out = cg_solve(sys.a, sys.b);
        for (const auto& r : out.records) EXPECT_GE(r.residual_sup, 0.0);
        if (out.verdict == CgVerdict::Successful) {
            EXPECT_LT(out.records.back().residual_sup, 1e-20);
        }
        if (out.verdict == CgVerdict::Infeasible) {
            EXPECT_FALSE(out.records.back().alpha_feasible);
        }
    }
}

TEST(CgSolve, BetaClassicalForm) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto sys = random_system(200 + seed, 5, 4);
        const auto out = cg_solve(sys.a, sys.b);
        for (std::size_t k = 1; k < out.records.size(); ++k) {
            const auto& cur = out.records[k];
            const auto& prev = out.records[k - 1];
            const auto rr = dot(cur.r, cur.r);
            const auto rr_prev = dot(prev.r, prev.r);
            if (rr_prev.support_max_abs() < 1e-16) continue;
            const auto classical = neg(rr * invert(rr_prev));
            for (std::size_t x = 0; x < sys.space->size(); ++x)
                EXPECT_NEAR(cur.beta[x], classical[x], 1e-8 * std::max(1.0, std::abs(classical[x])));
        }
    }
}

TEST(CgSolve, MinimalityOverKrylovAffineSpace) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> nd;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto sys = random_system(300 + seed, 4, 3);
        const auto out = cg_solve(sys.a, sys.b);
        const auto& last = out.records.back().x;
        for (std::size_t k = 1; k < out.records.size(); ++k) {
            const auto kry = krylov_basis(sys.a, out.records.front().r, k - 1);
            const auto ek = pointwise_norm_A(sub(last, out.records[k].x), sys.a);
            for (int trial = 0; trial < 100; ++trial) {
                FunctionVector cand = out.records.front().x;
                for (const auto& v : kry) {
                    std::vector<double> c(sys.space->size());
                    for (double& e : c) e = nd(rng);
                    cand = axpy(cand, AlgebraElement(sys.space, c), v);
                }
                const auto ec = pointwise_norm_A(sub(last, cand), sys.a);
                for (std::size_t x = 0; x < sys.space->size(); ++x) EXPECT_LE(ek[x], ec[x] + 1e-10);
            }
        }
    }
}

TEST(Krylov, Examples) {
    auto sys = random_system(9, 3, 2);
    const auto k0 = krylov_basis(sys.a, sys.b, 0);
    ASSERT_EQ(k0.size(), 1u);
    const auto id = krylov_basis(FunctionMatrix::identity(sys.space, 3), sys.b, 3);
    ASSERT_EQ(id.size(), 4u);
    for (const auto& v : id)
        for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(ae_equal(v[i], sys.b[i]));
    const auto k3 = krylov_basis(sys.a, sys.b, 3);
    for (std::size_t x = 0; x < 2; ++x) {
        auto v = sys.b.at_sample(x);
        const auto a = sys.a.at_sample(x);
        for (std::size_t j = 0; j <= 3; ++j) {
            for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(k3[j][i][x], v[i], 1e-12 * std::max(1.0, std::abs(v[i])));
            std::vector<double> w(3, 0.0);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t l = 0; l < 3; ++l) w[i] += a[i * 3 + l] * v[l];
            v = w;
        }
    }
    EXPECT_THROW(krylov_basis(sys.a, FunctionVector::zeros(sys.space, 2), 1), DimensionMismatch);
}

TEST(Orthogonality, Examples) {
    auto s = make_space({1, 1});
    const auto a = FunctionMatrix::constants(s, 2, {4, 1, 1, 3});
    const auto b = FunctionVector::constants(s, {1, 2});
    const auto out = cg_solve(a, b);
    const auto rep = verify_orthogonality(out, a, b);
    EXPECT_LE(rep.worst(), 1e-8 * rep.scale);
    EXPECT_LE(rep.max_krylov, 1e-10);

    const auto one = cg_solve(FunctionMatrix::identity(s, 2), b);
    const auto single = verify_orthogonality(CgOutcome{one.verdict, 0, {one.records.front()}, one.final_x},
                                             FunctionMatrix::identity(s, 2), b);
    EXPECT_EQ(single.pairs, 0u);
    EXPECT_EQ(single.worst(), 0.0);
}

TEST(Orthogonality, RandomSuite) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto sys = random_system(400 + seed, 2 + seed % 7, 1 + seed % 9);
        const auto out = cg_solve(sys.a, sys.b);
        const auto rep = verify_orthogonality(out, sys.a, sys.b);
        EXPECT_LE(rep.worst(), 1e-8 * rep.scale) << "seed " << seed;
        EXPECT_LE(rep.max_krylov, 1e-8);
    }
}
