#pragma once

#include <stdexcept>
#include <string>

namespace reflectode {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-domain arguments (non-finite coefficients, bad grids, ...).
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// The initial condition sits on the degenerate set: tilde-u(t0) = 0, so the
// problem has either no solution or a one-parameter family.
class NonUniqueError : public Error {
public:
    explicit NonUniqueError(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature failed to reach the requested tolerance. Carries the
// best estimate and the achieved error bound.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double estimate, double error_bound)
        : Error(msg), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// An n-th order construction hypothesis failed its numeric check.
class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

} // namespace reflectode
