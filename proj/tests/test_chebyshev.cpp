#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rieszcg/chebyshev.hpp"

using namespace rieszcg;

TEST(Chebyshev, LowDegrees) {
    for (double t : {-3.0, -0.5, 0.0, 0.7, 2.0, 10.0}) {
        EXPECT_EQ(chebyshev(0, t), 1.0);
        EXPECT_NEAR(chebyshev(1, t), t, 1e-14 * std::max(1.0, std::abs(t)));
        EXPECT_NEAR(chebyshev(2, t), 2 * t * t - 1, 1e-12 * std::max(1.0, t * t));
    }
    EXPECT_NEAR(chebyshev(2, 3), 17, 1e-12);
}

TEST(Chebyshev, ThreeTermValue) {
    // C_2(2) = 7, C_3(2) = 2·2·7 - 2
    const double c1 = 2, c2 = 2 * 2 * c1 - 1, c3 = 2 * 2 * c2 - c1;
    EXPECT_EQ(c3, 26);
    EXPECT_NEAR(chebyshev(3, 2), c3, 1e-12);
    EXPECT_NEAR(chebyshev_closed_form(3, 2), c3, 1e-12);
    EXPECT_EQ(chebyshev_recurrence(3, 2), c3);
}

TEST(Chebyshev, RoutesAgree) {
    for (unsigned k = 0; k <= 30; ++k)
        for (int i = 0; i <= 200; ++i) {
            const double t = -5.0 + 10.0 * i / 200.0;
            const double a = chebyshev(k, t), b = chebyshev_closed_form(k, t), c = chebyshev_recurrence(k, t);
            const double scale = std::max(1.0, std::abs(c));
            EXPECT_LE(std::abs(a - c), 1e-12 * scale) << "k=" << k << " t=" << t;
            EXPECT_LE(std::abs(b - c), 1e-12 * scale) << "k=" << k << " t=" << t;
        }
}

TEST(ChScaled, Normalization) {
    for (unsigned k = 0; k < 12; ++k) EXPECT_NEAR(ch_scaled(k, 0.0, 1.0, 9.0), 1.0, 1e-13);
    EXPECT_EQ(ch_scaled(0, 5.0, 1.0, 9.0), 1.0);
    EXPECT_THROW(ch_scaled(2, 0.0, 0.0, 1.0), BadInterval);
    EXPECT_THROW(ch_scaled(2, 0.0, 2.0, 1.0), BadInterval);
    EXPECT_THROW(ch_scaled(2, 0.0, -1.0, 1.0), BadInterval);
}

TEST(ChScaled, MatchesDirectQuotient) {
    const double a = 2, b = 7;
    for (unsigned k = 1; k < 15; ++k)
        for (double t : {0.0, 1.0, 2.0, 4.5, 7.0, 9.0}) {
            const double direct =
                chebyshev_recurrence(k, (b + a - 2 * t) / (b - a)) / chebyshev_recurrence(k, (b + a) / (b - a));
            EXPECT_NEAR(ch_scaled(k, t, a, b), direct, 1e-12 * std::max(1.0, std::abs(direct)));
        }
}

TEST(ChScaled, LargeDegreeStaysFinite) {
    const double v = ch_scaled(2000, 0.5, 1.0, 1e6);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LE(std::abs(v), 1.0);
}

TEST(ErrorBound, Examples) {
    EXPECT_EQ(error_bound(1, 0), 2.0);
    for (unsigned k = 1; k < 5; ++k) EXPECT_EQ(error_bound(1, k), 0.0);
    EXPECT_NEAR(error_bound(9, 1), 2.0 * (2.0 / 4.0), 1e-15);
    EXPECT_NEAR(error_bound(9, 3), 0.25, 1e-15);
    EXPECT_THROW(error_bound(0.5, 1), BadKappa);
}

TEST(ErrorBound, Monotone) {
    for (double kappa : {1.5, 4.0, 9.0, 100.0})
        for (unsigned k = 0; k < 20; ++k) EXPECT_LE(error_bound(kappa, k + 1), error_bound(kappa, k));
    for (unsigned k = 1; k < 10; ++k)
        for (double kappa = 1.0; kappa < 200; kappa *= 1.7) EXPECT_LE(error_bound(kappa, k), error_bound(kappa * 1.7, k));
}

TEST(MSup, Examples) {
    EXPECT_EQ(m_sup(RealPolynomial{{1.0}}, -4, 4), 1.0);
    EXPECT_EQ(m_sup(RealPolynomial{{0.0, 1.0}}, 1, 2), 2.0);
    EXPECT_THROW(m_sup(RealPolynomial{{1.0}}, 2, 1), BadInterval);
    EXPECT_THROW(m_sup(RealPolynomial{{1.0}}, 0, 1, 1), BadInterval);
}

TEST(MSup, InteriorPeakRefined) {
    // peak at t = 1/2 is off every even-count grid point
    const RealPolynomial p{{0.0, 1.0, -1.0}};
    EXPECT_NEAR(m_sup(p, 0.0, 1.0, 8), 0.25, 1e-14);
}

TEST(MSup, ChPolynomialMatchesChScaled) {
    const double a = 1, b = 9;
    for (unsigned k = 0; k <= 10; ++k) {
        const auto p = ch_polynomial(k, a, b);
        EXPECT_EQ(p.degree(), k);
        const double via_poly = m_sup(p, a, b);
        const double via_eval = grid_sup_abs([&](double t) { return ch_scaled(k, t, a, b); }, a, b, kDefaultSupGrid);
        EXPECT_NEAR(via_poly, via_eval, 1e-10);
        EXPECT_LE(via_eval, error_bound(b / a, k) + 1e-12);
        EXPECT_NEAR(p(0.0), 1.0, 1e-12);
    }
}

TEST(MSup, MinMaxChain) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> nd;
    for (double kappa : {4.0, 9.0, 25.0})
        for (unsigned k = 1; k <= 10; ++k) {
            const double ch_sup = m_sup(ch_polynomial(k, 1.0, kappa), 1.0, kappa);
            EXPECT_LE(ch_sup, error_bound(kappa, k) + 1e-10);
            // random polynomials with constant term 1 never beat the Chebyshev one
            for (int trial = 0; trial < 20; ++trial) {
                RealPolynomial q{std::vector<double>(k + 1)};
                q.coeffs[0] = 1.0;
                const auto ch = ch_polynomial(k, 1.0, kappa);
                for (unsigned i = 1; i <= k; ++i) q.coeffs[i] = ch.coeffs[i] * (1.0 + 0.05 * nd(rng));
                EXPECT_GE(m_sup(q, 1.0, kappa) + 1e-12, ch_sup);
            }
        }
}

TEST(MSupA, Examples) {
    auto s = make_space({1, 1});
    const RealPolynomial p{{1.0, -0.5, 0.1}};
    EXPECT_NEAR(M_sup_A(AlgebraPolynomial::from_real(s, p), 1, 4), m_sup(p, 1, 4), 0.0);
    EXPECT_EQ(M_sup_A(AlgebraPolynomial::from_real(s, RealPolynomial{{1.0}}), 0, 5), 1.0);
}

TEST(MSupA, TwoSampleExhaustive) {
    auto s = make_space({1, 1});
    const std::vector<double> f{1, 2};
    const AlgebraPolynomial q({constant(s, 1.0), AlgebraElement(s, f)});
    double oracle = 0.0;
    for (std::size_t x = 0; x < 2; ++x)
        for (int i = 0; i <= 1000; ++i) oracle = std::max(oracle, std::abs(1.0 + f[x] * (i / 1000.0)));
    EXPECT_EQ(oracle, 3.0);
    EXPECT_NEAR(M_sup_A(q, 0, 1), oracle, 1e-15);
}

TEST(MSupA, IgnoresNullSamples) {
    auto s = make_space({1, 0});
    const AlgebraPolynomial q({AlgebraElement(s, {1.0, 50.0})});
    EXPECT_EQ(M_sup_A(q, 0, 1), 1.0);
}
