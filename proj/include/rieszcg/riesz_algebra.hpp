#pragma once

// Sampled measurable functions on a finite measure space.
//
// An AlgebraElement stores one real value per sample point. Samples with zero
// weight form the null set: every order relation, equality and extremum below
// ignores them, which is how "almost everywhere" becomes decidable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rieszcg/errors.hpp"

namespace rieszcg {

class MeasureSpace;
using SpacePtr = std::shared_ptr<const MeasureSpace>;

/// Finite set of sample points carrying nonnegative measure weights.
class MeasureSpace {
public:
    std::size_t size() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    double weight(std::size_t i) const { return weights_[i]; }
    double total_measure() const noexcept { return total_; }

    bool is_null(std::size_t i) const { return weights_[i] == 0.0; }

    /// Indices of the positive-weight samples, ascending.
    const std::vector<std::size_t>& support() const noexcept { return support_; }

    bool same_as(const MeasureSpace& other) const noexcept {
        return this == &other || weights_ == other.weights_;
    }

    friend SpacePtr make_space(std::vector<double> weights, std::vector<std::string> labels);

private:
    MeasureSpace() = default;

    std::vector<double> weights_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> support_;
    double total_ = 0.0;
};

/// Builds a measure space. Labels are optional but, when given, must match the
/// number of weights.
inline SpacePtr make_space(std::vector<double> weights, std::vector<std::string> labels = {}) {
    if (!labels.empty() && labels.size() != weights.size())
        throw DimensionMismatch("make_space: labels size does not match weights size");
    auto space = std::shared_ptr<MeasureSpace>(new MeasureSpace());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w)) throw InvalidValue("make_space: weight " + std::to_string(i) + " is not finite");
        if (w < 0.0) throw NegativeWeight("make_space: weight " + std::to_string(i) + " is negative");
        if (w > 0.0) space->support_.push_back(i);
        total += w;
    }
    if (space->support_.empty()) throw EmptySpace("make_space: no sample has positive weight");
    space->weights_ = std::move(weights);
    space->labels_ = std::move(labels);
    space->total_ = total;
    return space;
}

/// Zero threshold used for every a.e. decision.
///
/// With `relative` set, the threshold for an element is
/// tau_zero * max(1, max |value|) over positive-weight samples.
struct ToleranceConfig {
    double tau_zero = 1e-12;
    bool relative = true;

    double resolve(double scale) const noexcept {
        return relative ? tau_zero * std::max(1.0, scale) : tau_zero;
    }
};

namespace detail {
inline void require_same_space(const MeasureSpace& a, const MeasureSpace& b, const char* op) {
    if (!a.same_as(b)) throw SpaceMismatch(std::string(op) + ": operands live on different measure spaces");
}
}  // namespace detail

/// One sampled measurable function.
class AlgebraElement {
public:
    AlgebraElement(SpacePtr space, std::vector<double> values) : space_(std::move(space)), values_(std::move(values)) {
        if (!space_) throw InvalidValue("AlgebraElement: null measure space");
        if (values_.size() != space_->size())
            throw DimensionMismatch("AlgebraElement: expected " + std::to_string(space_->size()) + " values, got " +
                                    std::to_string(values_.size()));
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw InvalidValue("AlgebraElement: value at sample " + std::to_string(i) + " is not finite");
    }

    const SpacePtr& space_ptr() const noexcept { return space_; }
    const MeasureSpace& space() const noexcept { return *space_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// max |value| over positive-weight samples.
    double support_max_abs() const {
        double m = 0.0;
        for (std::size_t i : space_->support()) m = std::max(m, std::abs(values_[i]));
        return m;
    }

    template <class F>
    AlgebraElement map(F&& f) const {
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(values_[i]);
        return AlgebraElement(space_, std::move(out));
    }

    template <class F>
    AlgebraElement zip(const AlgebraElement& other, F&& f, const char* op) const {
        detail::require_same_space(*space_, *other.space_, op);
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(values_[i], other.values_[i]);
        return AlgebraElement(space_, std::move(out));
    }

private:
    SpacePtr space_;
    std::vector<double> values_;
};

// ring and vector-space structure

inline AlgebraElement constant(const SpacePtr& space, double r) {
    return AlgebraElement(space, std::vector<double>(space->size(), r));
}

inline AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    return a.zip(b, [](double x, double y) { return x + y; }, "add");
}

inline AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    return a.zip(b, [](double x, double y) { return x - y; }, "sub");
}

inline AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    return a.zip(b, [](double x, double y) { return x * y; }, "mul");
}

inline AlgebraElement neg(const AlgebraElement& a) {
    return a.map([](double x) { return -x; });
}

inline AlgebraElement scalar_mul(double r, const AlgebraElement& a) {
    return a.map([r](double x) { return r * x; });
}

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) { return add(a, b); }
inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return sub(a, b); }
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return mul(a, b); }
inline AlgebraElement operator-(const AlgebraElement& a) { return neg(a); }
inline AlgebraElement operator*(double r, const AlgebraElement& a) { return scalar_mul(r, a); }

// lattice

inline AlgebraElement sup(const AlgebraElement& a, const AlgebraElement& b) {
    return a.zip(b, [](double x, double y) { return std::max(x, y); }, "sup");
}

inline AlgebraElement inf(const AlgebraElement& a, const AlgebraElement& b) {
    return a.zip(b, [](double x, double y) { return std::min(x, y); }, "inf");
}

inline AlgebraElement abs(const AlgebraElement& a) {
    return a.map([](double x) { return std::abs(x); });
}

// order

inline bool is_geq_zero(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    const double tau = tol.resolve(a.support_max_abs());
    for (std::size_t i : a.space().support())
        if (a[i] < -tau) return false;
    return true;
}

/// a >= b a.e.
inline bool is_geq(const AlgebraElement& a, const AlgebraElement& b, const ToleranceConfig& tol = {}) {
    return is_geq_zero(sub(a, b), tol);
}

/// Positive-weight samples where the value is not above the threshold.
inline std::vector<std::size_t> non_positive_samples(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    const double tau = tol.resolve(a.support_max_abs());
    std::vector<std::size_t> out;
    for (std::size_t i : a.space().support())
        if (!(a[i] > tau)) out.push_back(i);
    return out;
}

/// a ≻ 0: above the threshold at every positive-weight sample.
inline bool is_strictly_positive(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    return non_positive_samples(a, tol).empty();
}

/// Samples that keep `a` out of the one-signed set S. The reference sign is
/// the sign of the largest-magnitude positive-weight value (lowest index on
/// ties); violators are the samples not strictly on that side.
inline std::vector<std::size_t> one_sign_violations(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    const double tau = tol.resolve(a.support_max_abs());
    double ref = 0.0;
    for (std::size_t i : a.space().support())
        if (std::abs(a[i]) > std::abs(ref)) ref = a[i];
    std::vector<std::size_t> out;
    const double sign = ref < 0.0 ? -1.0 : 1.0;
    for (std::size_t i : a.space().support())
        if (!(sign * a[i] > tau)) out.push_back(i);
    return out;
}

/// Membership in S: a ≻ 0 or -a ≻ 0.
inline bool in_S(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    return one_sign_violations(a, tol).empty();
}

/// Inverse in the localized algebra. Only elements of S are invertible.
/// Null samples of the result are set to 0.
inline AlgebraElement invert(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    auto bad = one_sign_violations(a, tol);
    if (!bad.empty()) throw NotInvertible("invert: element is not one-signed a.e.", std::move(bad));
    const auto& space = a.space();
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t i : space.support()) out[i] = 1.0 / a[i];
    return AlgebraElement(a.space_ptr(), std::move(out));
}

/// Pointwise reciprocal that maps every sample failing one-signedness, and
/// every null sample, to 0. Used where a partial quotient is still reported.
inline AlgebraElement invert_where_defined(const AlgebraElement& a, const std::vector<std::size_t>& violations) {
    std::vector<double> out(a.size(), 0.0);
    std::vector<char> skip(a.size(), 0);
    for (std::size_t i : violations) skip[i] = 1;
    for (std::size_t i : a.space().support())
        if (!skip[i] && a[i] != 0.0) out[i] = 1.0 / a[i];
    return AlgebraElement(a.space_ptr(), std::move(out));
}

/// The strictly positive square root of a ≻ 0. Null samples get sqrt(max(v, 0)).
inline AlgebraElement sqrt_strict(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    auto bad = non_positive_samples(a, tol);
    if (!bad.empty()) throw NotStrictlyPositive("sqrt_strict: element is not strictly positive", std::move(bad));
    return a.map([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline bool ae_equal(const AlgebraElement& a, const AlgebraElement& b, const ToleranceConfig& tol = {}) {
    detail::require_same_space(a.space(), b.space(), "ae_equal");
    const double tau = tol.resolve(std::max(a.support_max_abs(), b.support_max_abs()));
    for (std::size_t i : a.space().support())
        if (std::abs(a[i] - b[i]) > tau) return false;
    return true;
}

/// |a| <= tau_zero at every positive-weight sample. The threshold is absolute:
/// an element cannot serve as its own scale when testing for zero.
inline bool is_ae_zero(const AlgebraElement& a, const ToleranceConfig& tol = {}) {
    const double tau = tol.tau_zero;
    for (std::size_t i : a.space().support())
        if (std::abs(a[i]) > tau) return false;
    return true;
}

/// max over positive-weight samples.
inline double sup_over_space(const AlgebraElement& a) {
    const auto& support = a.space().support();
    double m = a[support.front()];
    for (std::size_t i : support) m = std::max(m, a[i]);
    return m;
}

/// min over positive-weight samples.
inline double inf_over_space(const AlgebraElement& a) {
    const auto& support = a.space().support();
    double m = a[support.front()];
    for (std::size_t i : support) m = std::min(m, a[i]);
    return m;
}

}  // namespace rieszcg
