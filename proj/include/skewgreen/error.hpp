#pragma once

#include <stdexcept>
#include <string>

namespace skewgreen {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Symbolic expansion grew past the configured term budget.
class TermBudgetExceeded : public Error {
public:
    TermBudgetExceeded(std::size_t terms, std::size_t budget)
        : Error("term budget exceeded: " + std::to_string(terms) + " > " + std::to_string(budget)),
          terms_(terms), budget_(budget) {}
    std::size_t terms() const noexcept { return terms_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t terms_;
    std::size_t budget_;
};

/// Input violates a standing assumption (degrees, monic normalization, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An evaluator was called outside the degree/weight case it is defined for.
class WrongCase : public Error {
public:
    using Error::Error;
};

class AlphaNotFinite : public Error {
public:
    AlphaNotFinite() : Error("alpha is -inf; weights are undefined") {}
};

class DominanceUnavailable : public Error {
public:
    using Error::Error;
};

class DecompositionFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, std::string expected)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": expected " + expected),
          line_(line), column_(column), expected_(std::move(expected)) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::string expected_;
};

}  // namespace skewgreen
