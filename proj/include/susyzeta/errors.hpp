#ifndef SUSYZETA_ERRORS_HPP
#define SUSYZETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace susyzeta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the domain where a series or operator is defined.
struct DomainError : Error {
    using Error::Error;
};

// Eigenvalue requested outside the half-plane where its Dirichlet series converges.
struct StripViolation : DomainError {
    using DomainError::DomainError;
};

struct ConvergenceError : Error {
    using Error::Error;
};

// s = 1 for zeta(s), s = 0 for zeta(1 - s).
struct PoleError : Error {
    using Error::Error;
};

// |1 - 2^(1-s)| below the guard at a removable point s = 1 + 2*pi*i*k/ln 2, k != 0.
struct NearSingularDenominator : Error {
    using Error::Error;
};

// Confluent seed with S0 = 1/2, where the integral of u^2 is logarithmic.
struct DegenerateSeed : DomainError {
    using DomainError::DomainError;
};

struct NotAZero : Error {
    NotAZero(const std::string& what, double lambda, double residual)
        : Error(what), lambda(lambda), residual(residual) {}
    double lambda;
    double residual;
};

struct GridTooCoarse : DomainError {
    using DomainError::DomainError;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace susyzeta

#endif
