#pragma once

#include <stdexcept>
#include <string>

namespace nulo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input, violated precondition or mismatched dimensions.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// The operation has no implementation for the requested norm family.
class UnsupportedOperation : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Enumeration size above the configured limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// The deterministic perturbation schedule found no admissible direction.
class PerturbationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace nulo
