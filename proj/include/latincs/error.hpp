#pragma once

#include <stdexcept>
#include <string>

namespace latincs {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` and `column` are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0, int column = 0)
        : Error(message), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A caller broke a documented precondition (order mismatch, filled cell, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A guard or node budget rejected the request.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a numeric routine.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace latincs
