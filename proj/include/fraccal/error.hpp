#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraccal {

// Argument outside the mathematical domain (poles, x <= 0, alpha outside (0,1)).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Iterative evaluation did not reach the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

// Vector lengths or step indices that do not fit the requested construction.
struct SizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Shifted scheme handed to a non-shifted solver or vice versa.
struct SchemeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class SingularStep : public std::runtime_error {
public:
    SingularStep(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace fraccal
