#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hahn {

/// Base class for all errors raised by the library. Each carries a stable
/// machine-readable code (used verbatim by the CLI's structured stderr JSON)
/// next to the human-readable message.
class HahnError : public std::runtime_error {
public:
    HahnError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// A term list contains two terms with the same exponent.
class DuplicateExponentError : public HahnError {
public:
    explicit DuplicateExponentError(const std::string& message)
        : HahnError("duplicate_exponent", message) {}
};

/// Text input does not match the grammar. `position` is the 0-based offset of
/// the first offending character.
class SyntaxError : public HahnError {
public:
    SyntaxError(const std::string& message, std::size_t position)
        : HahnError("syntax_error", message + " at offset " + std::to_string(position)),
          position(position) {}

    std::size_t position;
};

/// A requested quantity depends on coefficients at or beyond the cutoff.
class CutoffError : public HahnError {
public:
    explicit CutoffError(const std::string& message)
        : HahnError("cutoff_insufficient", message) {}
};

/// A comparison (or ball membership) cannot be decided at the current
/// truncation.
class UndecidableError : public HahnError {
public:
    explicit UndecidableError(const std::string& message)
        : HahnError("undecidable_comparison", message) {}
};

/// Input violates a stated hypothesis (lambda(x - x0) >= lambda0, or the
/// coefficient-lambda growth condition).
class HypothesisError : public HahnError {
public:
    explicit HypothesisError(const std::string& message)
        : HahnError("hypothesis_violation", message) {}
};

/// An adaptive computation exhausted its iteration budget before reaching the
/// requested tolerance.
class BudgetError : public HahnError {
public:
    explicit BudgetError(const std::string& message)
        : HahnError("budget_exceeded", message) {}
};

/// Non-convergent input where convergence is a precondition.
class NonConvergentError : public HahnError {
public:
    explicit NonConvergentError(const std::string& message)
        : HahnError("non_convergent", message) {}
};

}  // namespace hahn
