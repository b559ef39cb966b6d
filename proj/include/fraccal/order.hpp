#pragma once

#include "fraccal/error.hpp"

#include <cmath>
#include <string>

namespace fraccal {

// Derivative order alpha, validated to lie strictly inside (0,1).
class FractionalOrder {
public:
    explicit FractionalOrder(double value) : value_(value) {
        if (!(value > 0.0 && value < 1.0))
            throw DomainError("fractional order must lie in (0,1), got " + std::to_string(value));
    }
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

} // namespace fraccal
