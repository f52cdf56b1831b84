#pragma once

// Chebyshev polynomials, the shifted min-max polynomial on [a, b], the CG
// error envelope, and sup-functionals of polynomials over an interval.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rieszcg/errors.hpp"
#include "rieszcg/polynomial.hpp"

namespace rieszcg {

inline constexpr std::size_t kDefaultSupGrid = 257;

/// C_k(t): cos(k acos t) inside [-1, 1], ±cosh(k acosh |t|) outside.
inline double chebyshev(unsigned k, double t) {
    if (k == 0) return 1.0;
    if (std::abs(t) <= 1.0) return std::cos(k * std::acos(t));
    const double sign = (t < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    return sign * std::cosh(k * std::acosh(std::abs(t)));
}

/// C_k(t) from (1/2)[(t + sqrt(t^2-1))^k + (t + sqrt(t^2-1))^-k] in complex
/// arithmetic, with the powers taken by repeated squaring.
inline double chebyshev_closed_form(unsigned k, double t) {
    using C = std::complex<double>;
    const C z = C(t, 0.0) + std::sqrt(C(t * t - 1.0, 0.0));
    auto ipow = [](C base, unsigned e) {
        C out(1.0, 0.0);
        while (e) {
            if (e & 1u) out *= base;
            base *= base;
            e >>= 1u;
        }
        return out;
    };
    const C zk = ipow(z, k);
    return (0.5 * (zk + 1.0 / zk)).real();
}

/// C_k(t) from the three-term recurrence C_{j+1} = 2t C_j - C_{j-1}.
inline double chebyshev_recurrence(unsigned k, double t) {
    if (k == 0) return 1.0;
    double prev = 1.0, cur = t;
    for (unsigned j = 1; j < k; ++j) {
        const double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {
// log |C_k(u)| for |u| > 1, stable for large k.
inline double log_abs_chebyshev_outside(unsigned k, double u) {
    const double theta = std::acosh(std::abs(u));
    const double kt = k * theta;
    return kt + std::log1p(std::exp(-2.0 * kt)) - std::numbers::ln2;
}

inline void require_ordered_positive(double a, double b, const char* op) {
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
        throw BadInterval(std::string(op) + ": need 0 < a < b");
}
}  // namespace detail

/// C_k((b+a-2t)/(b-a)) / C_k((b+a)/(b-a)); equals 1 at t = 0.
inline double ch_scaled(unsigned k, double t, double a, double b) {
    detail::require_ordered_positive(a, b, "ch_scaled");
    if (k == 0) return 1.0;
    const double u = (b + a - 2.0 * t) / (b - a);
    const double u0 = (b + a) / (b - a);
    const double log_den = detail::log_abs_chebyshev_outside(k, u0);
    if (std::abs(u) <= 1.0) return std::cos(k * std::acos(u)) * std::exp(-log_den);
    const double sign = (u < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    return sign * std::exp(detail::log_abs_chebyshev_outside(k, u) - log_den);
}

/// Monomial coefficients of the shifted, normalized Chebyshev polynomial
/// evaluated by ch_scaled. Built by running the recurrence on the linear
/// polynomial u(T) = (b+a-2T)/(b-a).
inline RealPolynomial ch_polynomial(unsigned k, double a, double b) {
    detail::require_ordered_positive(a, b, "ch_polynomial");
    const double u0 = (b + a) / (b - a);
    const double u1 = -2.0 / (b - a);
    std::vector<double> prev{1.0}, cur{u0, u1};
    if (k == 0) return RealPolynomial{prev};
    for (unsigned j = 1; j < k; ++j) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i] += 2.0 * u0 * cur[i];
            next[i + 1] += 2.0 * u1 * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    const double norm = chebyshev(k, u0);
    for (double& c : cur) c /= norm;
    return RealPolynomial{cur};
}

/// 2 ((sqrt(kappa) - 1) / (sqrt(kappa) + 1))^k.
inline double error_bound(double kappa, unsigned k) {
    if (!(kappa >= 1.0)) throw BadKappa("error_bound: kappa must be >= 1");
    if (std::isinf(kappa)) return 2.0;
    const double s = std::sqrt(kappa);
    return 2.0 * std::pow((s - 1.0) / (s + 1.0), static_cast<double>(k));
}

/// Chebyshev-Lobatto points on [a, b], ascending, endpoints included.
inline std::vector<double> chebyshev_grid(double a, double b, std::size_t grid) {
    std::vector<double> t(grid);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < grid; ++j)
        t[j] = mid - half * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid - 1));
    t.front() = a;
    t.back() = b;
    return t;
}

/// max |f| over the Chebyshev grid on [a, b], refined by golden-section search
/// around each grid-local maximum. Every evaluation point lies in [a, b], so
/// the result never exceeds the true supremum.
template <class F>
double grid_sup_abs(F&& f, double a, double b, std::size_t grid) {
    if (!(a <= b)) throw BadInterval("grid_sup_abs: need a <= b");
    if (grid < 2) throw BadInterval("grid_sup_abs: grid must have at least 2 points");
    if (a == b) return std::abs(f(a));
    const auto t = chebyshev_grid(a, b, grid);
    std::vector<double> v(grid);
    for (std::size_t j = 0; j < grid; ++j) v[j] = std::abs(f(t[j]));
    double best = *std::max_element(v.begin(), v.end());
    constexpr double inv_phi = 0.6180339887498949;
    for (std::size_t j = 1; j + 1 < grid; ++j) {
        if (v[j] < v[j - 1] || v[j] < v[j + 1]) continue;
        double lo = t[j - 1], hi = t[j + 1];
        double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
        double fc = std::abs(f(c)), fd = std::abs(f(d));
        for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = std::abs(f(c));
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = std::abs(f(d));
            }
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

/// m(p) = sup over [a, b] of |p(t)|.
inline double m_sup(const RealPolynomial& p, double a, double b, std::size_t grid = kDefaultSupGrid) {
    return grid_sup_abs([&](double t) { return p(t); }, a, b, grid);
}

/// M(q) = sup over positive-weight samples x and t in [a, b] of |q(x, t)|.
inline double M_sup_A(const AlgebraPolynomial& q, double a, double b, std::size_t grid = kDefaultSupGrid) {
    if (!(a <= b)) throw BadInterval("M_sup_A: need a <= b");
    double best = 0.0;
    for (std::size_t x : q.space_ptr()->support())
        best = std::max(best, grid_sup_abs([&](double t) { return q.evaluate(x, t); }, a, b, grid));
    return best;
}

}  // namespace rieszcg
