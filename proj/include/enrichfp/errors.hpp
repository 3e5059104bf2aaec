#pragma once

#include <stdexcept>
#include <string>

namespace enrichfp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: dimension mismatch, empty point, out-of-range parameter.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A user-supplied function produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Inconsistent configuration (missing triple, wrong coefficient mode, unknown name).
class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// The supplied inverse of S does not invert S at some iterate.
class InverseError : public Error {
public:
    InverseError(const std::string& what, std::size_t iteration)
        : Error(what), iteration_(iteration) {}
    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

class NoRootBracketed : public Error {
public:
    using Error::Error;
};

} // namespace enrichfp
