#pragma once

#include <stdexcept>
#include <string>

namespace envsieve {

enum class ErrorKind { usage, hypothesis, budget, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Malformed user input: form strings, flag values, JSON inputs.
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::usage, w) {}
};

// A stated precondition of the mathematics does not hold.
struct HypothesisError : Error {
    explicit HypothesisError(const std::string& w) : Error(ErrorKind::hypothesis, w) {}
};

struct DegenerateFormError : HypothesisError {
    using HypothesisError::HypothesisError;
};

struct DomainError : HypothesisError {
    using HypothesisError::HypothesisError;
};

struct RangeError : HypothesisError {
    using HypothesisError::HypothesisError;
};

struct ContractError : HypothesisError {
    using HypothesisError::HypothesisError;
};

// Memory, factoring or cost budget exceeded.
struct BudgetError : Error {
    explicit BudgetError(const std::string& w) : Error(ErrorKind::budget, w) {}
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};

int exit_code(ErrorKind kind) noexcept;

}  // namespace envsieve
