#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rieszcg {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An error that names the sample points responsible for it.
class SampleError : public Error {
public:
    SampleError(const std::string& what, std::vector<std::size_t> samples)
        : Error(what + describe(samples)), samples_(std::move(samples)) {}

    const std::vector<std::size_t>& samples() const noexcept { return samples_; }

private:
    static std::string describe(const std::vector<std::size_t>& s) {
        std::string out = " (samples:";
        const std::size_t shown = s.size() < 8 ? s.size() : 8;
        for (std::size_t i = 0; i < shown; ++i) out += " " + std::to_string(s[i]);
        if (s.size() > shown) out += " ...";
        return out + ")";
    }

    std::vector<std::size_t> samples_;
};

#define RIESZCG_DEFINE_ERROR(Name, Base)      \
    class Name : public Base {                \
    public:                                   \
        using Base::Base;                     \
    };

// measure space / algebra
RIESZCG_DEFINE_ERROR(EmptySpace, Error)
RIESZCG_DEFINE_ERROR(NegativeWeight, Error)
RIESZCG_DEFINE_ERROR(InvalidValue, Error)
RIESZCG_DEFINE_ERROR(SpaceMismatch, Error)
RIESZCG_DEFINE_ERROR(NotInvertible, SampleError)
RIESZCG_DEFINE_ERROR(NotStrictlyPositive, SampleError)

// linear algebra
RIESZCG_DEFINE_ERROR(DimensionMismatch, Error)
RIESZCG_DEFINE_ERROR(NotSymmetric, Error)
RIESZCG_DEFINE_ERROR(NotPositiveDefinite, SampleError)
RIESZCG_DEFINE_ERROR(EigenNoConvergence, SampleError)

// conjugate gradients
RIESZCG_DEFINE_ERROR(DenominatorNotInvertible, SampleError)
RIESZCG_DEFINE_ERROR(InfeasibleControlTerm, SampleError)

// polynomials and bounds
RIESZCG_DEFINE_ERROR(BadInterval, Error)
RIESZCG_DEFINE_ERROR(BadKappa, Error)
RIESZCG_DEFINE_ERROR(SingularSpectrum, Error)

// harness
RIESZCG_DEFINE_ERROR(BadParameters, Error)
RIESZCG_DEFINE_ERROR(SingularSample, SampleError)
RIESZCG_DEFINE_ERROR(ShapeMismatch, Error)
RIESZCG_DEFINE_ERROR(IoError, Error)

#undef RIESZCG_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace rieszcg
