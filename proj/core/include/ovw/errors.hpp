#pragma once

#include <stdexcept>
#include <string>

namespace ovw {

/// Argument outside the mathematical domain of an operation (negative s, p < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input data: non-finite samples, grid mismatch, bad config.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A solver trajectory could not be continued (CFL violation, NaN, spectral tail).
class SolverAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Gronwall certifier could not produce constants for the given profiles.
class CertificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem and serialization failures.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ovw
