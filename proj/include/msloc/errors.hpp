#pragma once

#include <stdexcept>
#include <string>

namespace msloc {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Triangle is collapsed or a clamped quantity left its domain by more than the guard.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

/// Target outside the scene's search bounds.
class OutOfBounds : public Error {
public:
    using Error::Error;
};

class EmptyTruth : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Every pair failed range inversion.
class NoUsablePairs : public Error {
public:
    using Error::Error;
};

/// Velocity needs at least two usable pairs.
class InsufficientPairs : public Error {
public:
    using Error::Error;
};

/// Velocity design matrix is numerically rank deficient.
class SingularGeometry : public Error {
public:
    using Error::Error;
};

/// Malformed input text. `field` names the offending location when known.
class ParseError : public Error {
public:
    ParseError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Well-formed input that violates an invariant.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace msloc
