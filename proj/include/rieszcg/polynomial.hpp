#pragma once

#include <cstddef>
#include <vector>

#include "rieszcg/riesz_algebra.hpp"

namespace rieszcg {

/// Polynomial with real coefficients, ascending degree.
struct RealPolynomial {
    std::vector<double> coeffs;

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    double operator()(double t) const noexcept {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
        return acc;
    }
};

/// Polynomial in T whose coefficients are algebra elements, ascending degree.
/// Evaluating at a sample x and a real t gives the function q(x, t).
class AlgebraPolynomial {
public:
    explicit AlgebraPolynomial(std::vector<AlgebraElement> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw InvalidValue("AlgebraPolynomial: needs at least one coefficient");
        for (const auto& c : coeffs_) detail::require_same_space(coeffs_.front().space(), c.space(), "AlgebraPolynomial");
    }

    /// Embeds a real polynomial as constant-coefficient functions on `space`.
    static AlgebraPolynomial from_real(const SpacePtr& space, const RealPolynomial& p) {
        std::vector<AlgebraElement> c;
        c.reserve(p.coeffs.size());
        for (double v : p.coeffs) c.push_back(constant(space, v));
        if (c.empty()) c.push_back(constant(space, 0.0));
        return AlgebraPolynomial(std::move(c));
    }

    const std::vector<AlgebraElement>& coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const SpacePtr& space_ptr() const noexcept { return coeffs_.front().space_ptr(); }

    double evaluate(std::size_t sample, double t) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i][sample];
        return acc;
    }

private:
    std::vector<AlgebraElement> coeffs_;
};

}  // namespace rieszcg
