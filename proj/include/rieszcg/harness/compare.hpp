#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rieszcg/cg_solver.hpp"
#include "rieszcg/harness/oracle.hpp"

namespace rieszcg {

struct CompareReport {
    double max_dev_x = 0.0;
    double max_dev_r = 0.0;
    double max_dev_p = 0.0;
    double max_dev_alpha = 0.0;
    std::size_t iterations_compared = 0;
    std::size_t samples_compared = 0;
    double tol = 1e-10;

    double max_dev() const { return std::max({max_dev_x, max_dev_r, max_dev_p, max_dev_alpha}); }
    bool pass() const { return max_dev() <= tol; }
};

/// Largest relative deviation between the algebra-valued iterates and the
/// scalar iterates, sample by sample. A deviation is |f - s| divided by the
/// largest magnitude that quantity reaches over the compared iterations at
/// that sample. α_k is compared only on records that fed a further step: the
/// control term of the last record is never used.
inline CompareReport compare(const CgOutcome& outcome, const OracleResult& oracle, double tol = 1e-10) {
    if (outcome.records.empty()) throw ShapeMismatch("compare: outcome has no records");
    const auto& first = outcome.records.front();
    const std::size_t n = first.x.size();
    const auto& space = first.x.space();
    if (oracle.n != n || oracle.m != space.size()) throw ShapeMismatch("compare: problem dimensions differ");
    if (oracle.per_sample_traces.size() != space.support().size())
        throw ShapeMismatch("compare: oracle covers a different set of samples");

    CompareReport rep;
    rep.tol = tol;
    const std::size_t used_alphas = outcome.records.size() - 1;
    for (std::size_t t = 0; t < oracle.per_sample_traces.size(); ++t) {
        const auto& trace = oracle.per_sample_traces[t];
        const std::size_t x = trace.sample;
        if (x != space.support()[t]) throw ShapeMismatch("compare: oracle sample order differs from the space support");
        const std::size_t iters = std::min(outcome.records.size(), trace.iterations.size());
        rep.iterations_compared = std::max(rep.iterations_compared, iters);
        ++rep.samples_compared;

        auto vec_scale = [&](auto member) {
            double s = 0.0;
            for (std::size_t k = 0; k < iters; ++k)
                for (double v : trace.iterations[k].*member) s = std::max(s, std::abs(v));
            return s;
        };
        const double sx = vec_scale(&ScalarCgIterate::x);
        const double sr = vec_scale(&ScalarCgIterate::r);
        const double sp = vec_scale(&ScalarCgIterate::p);
        double sa = 0.0;
        for (std::size_t k = 0; k < std::min(iters, used_alphas); ++k) sa = std::max(sa, std::abs(trace.iterations[k].alpha));

        auto rel = [](double f, double s, double scale) {
            const double d = std::abs(f - s);
            return scale > 0.0 ? d / scale : d;
        };
        for (std::size_t k = 0; k < iters; ++k) {
            const auto& rec = outcome.records[k];
            const auto& it = trace.iterations[k];
            for (std::size_t i = 0; i < n; ++i) {
                rep.max_dev_x = std::max(rep.max_dev_x, rel(rec.x[i][x], it.x[i], sx));
                rep.max_dev_r = std::max(rep.max_dev_r, rel(rec.r[i][x], it.r[i], sr));
                rep.max_dev_p = std::max(rep.max_dev_p, rel(rec.p[i][x], it.p[i], sp));
            }
            if (k < used_alphas) rep.max_dev_alpha = std::max(rep.max_dev_alpha, rel(rec.alpha[x], it.alpha, sa));
        }
    }
    return rep;
}

}  // namespace rieszcg
