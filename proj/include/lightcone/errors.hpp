#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace lightcone {

// Input outside the mathematical domain of an operation (non-finite, wrong sign).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Ci has a logarithmic pole at the origin.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Evaluation requested exactly on the light cone (xi == 1). Callers must ask
// for the one-sided limits instead.
class BoundaryError : public DomainError {
public:
    using DomainError::DomainError;
};

// Coupling too strong for the second-order state: rho22 = 1 + 2 Re A <= 0.
class ValidityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Oracle extrapolation did not settle within tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + format(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }

    double residual_;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace lightcone
