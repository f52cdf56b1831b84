#pragma once

// Cyclic Jacobi diagonalization of one small dense symmetric matrix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace rieszcg::jacobi {

struct Eigensystem {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column j (row-major n x n) is the j-th eigenvector
    bool converged = false;
    int sweeps = 0;
};

inline constexpr double kOffDiagonalRatio = 1e-14;
inline constexpr int kMaxSweeps = 50;

/// Diagonalizes the symmetric part of the row-major n x n matrix `a`.
/// Eigenvectors are normalized and signed so that the largest-magnitude
/// component is positive (lowest index on ties).
inline Eigensystem decompose(std::vector<double> a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = a[j * n + i] = s;
        }

    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    Eigensystem out;
    for (int sweep = 0;; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double x = a[i * n + j] * a[i * n + j];
                total += x;
                if (i != j) off += x;
            }
        if (std::sqrt(off) <= kOffDiagonalRatio * std::sqrt(total)) {
            out.converged = true;
            out.sweeps = sweep;
            break;
        }
        if (sweep == kMaxSweeps) {
            out.sweeps = sweep;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    out.values.resize(n);
    out.vectors.assign(n * n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.values[col] = a[src * n + src];
        std::size_t lead = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (std::abs(v[k * n + src]) > std::abs(v[lead * n + src])) lead = k;
        const double sign = v[lead * n + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + col] = sign * v[k * n + src];
    }
    return out;
}

}  // namespace rieszcg::jacobi
