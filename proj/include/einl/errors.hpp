#pragma once

#include <stdexcept>
#include <string>

namespace einl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration would exceed the configured size guard.
class GuardExceeded : public Error {
public:
    GuardExceeded(const std::string& what, int i, int j)
        : Error(what), source(i), target(j) {}
    int source;
    int target;
};

/// A verified algebraic identity failed. This always signals a bug in the
/// encoding or in the arithmetic, never a legitimate negative verdict.
class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

/// The caller violated a precondition (dimension mismatch, bad object range, ...).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

/// An input file could not be parsed; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line = 0) : Error(what), line_number(line) {}
    long line_number;
};

} // namespace einl
