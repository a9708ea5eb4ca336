#pragma once

#include <cmath>
#include <limits>

#include "freemax/errors.hpp"

namespace freemax {

/// A real number or a signed infinity. Finiteness is a tag, never a sentinel
/// magnitude, so branch logic can test it directly.
class ExtendedReal {
public:
    static constexpr ExtendedReal finite(double v) { return ExtendedReal(v, 0); }
    static constexpr ExtendedReal pos_infinity() { return ExtendedReal(0.0, +1); }
    static constexpr ExtendedReal neg_infinity() { return ExtendedReal(0.0, -1); }

    constexpr bool is_finite() const { return sign_ == 0; }
    constexpr bool is_pos_infinity() const { return sign_ > 0; }
    constexpr bool is_neg_infinity() const { return sign_ < 0; }

    /// Finite value; throws if infinite.
    double value() const
    {
        if (!is_finite())
            throw DomainError("ExtendedReal::value on an infinite endpoint");
        return value_;
    }

    /// Value as a double, with +-inf for the infinite cases.
    constexpr double as_double() const
    {
        if (sign_ > 0)
            return std::numeric_limits<double>::infinity();
        if (sign_ < 0)
            return -std::numeric_limits<double>::infinity();
        return value_;
    }

    friend constexpr bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

private:
    constexpr ExtendedReal(double v, int sign) : value_(v), sign_(sign) {}

    double value_;
    int sign_;
};

} // namespace freemax
