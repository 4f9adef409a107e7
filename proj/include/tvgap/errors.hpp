#pragma once

#include <stdexcept>
#include <string>

namespace tvgap {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NonFiniteInput : public DomainError {
public:
    using DomainError::DomainError;
};

class SigmaMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class DimensionMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(std::size_t pivot_index, double pivot_value);

    std::size_t pivot_index() const noexcept { return pivot_index_; }
    double pivot_value() const noexcept { return pivot_value_; }

private:
    std::size_t pivot_index_;
    double pivot_value_;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class RetryLimitExceeded : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace tvgap
