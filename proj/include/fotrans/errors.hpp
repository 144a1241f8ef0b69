#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fotrans {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (graph files, transduction files, Gaifman forms).
class InputError : public Error {
public:
    using Error::Error;
};

/// Formula syntax error; line and column are 1-based.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, int line, int column)
        : InputError("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class UnboundVariableError : public InputError {
public:
    explicit UnboundVariableError(const std::string& variable)
        : InputError("unbound variable '" + variable + "'"), variable_(variable) {}

    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

/// An exhaustive search would exceed its budget. Searches never truncate silently.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double required, std::uint64_t budget)
        : Error(what + ": search space " + format_space(required) + " exceeds budget " + std::to_string(budget)),
          required_(required), budget_(budget) {}

    double required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    static std::string format_space(double v) {
        if (v < 1e18) return std::to_string(static_cast<std::uint64_t>(v));
        return std::to_string(v);
    }
    double required_;
    std::uint64_t budget_;
};

class SizeLimitExceeded : public Error {
public:
    SizeLimitExceeded(const std::string& what, int size, int limit, const std::string& unit = "vertices")
        : Error(what + ": " + std::to_string(size) + " " + unit + " exceeds limit " + std::to_string(limit)),
          size_(size), limit_(limit) {}

    int size() const noexcept { return size_; }
    int limit() const noexcept { return limit_; }

private:
    int size_;
    int limit_;
};

/// A search found no object within its bounds (for example no star coloring with the allowed colors).
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Misuse of a transduction pipeline (arity mismatch, unknown predicate, empty output).
class TransductionError : public Error {
public:
    using Error::Error;
};

}  // namespace fotrans
