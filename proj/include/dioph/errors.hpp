#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dioph {

enum class ErrorCode {
    InvalidArgument,
    NotUnimodular,
    SearchSpaceTooLarge,
    UnsupportedDimension,
    BudgetExceeded,
    ZeroValue,
    MissingDensities,
    AlphaTooLarge,
    NoWitness,
    ConvergenceFailure,
    LevelInsufficient,
    NoRecurrenceFound,
    Aborted,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what)
        : Error(ErrorCode::InvalidArgument, what) {}
};

/// det(raw) != 1; carries the actual determinant as a decimal fraction.
class NotUnimodular : public Error {
public:
    explicit NotUnimodular(std::string determinant)
        : Error(ErrorCode::NotUnimodular, "matrix is not unimodular: det = " + determinant),
          determinant_(std::move(determinant)) {}
    const std::string& determinant() const noexcept { return determinant_; }

private:
    std::string determinant_;
};

/// Search box or group order larger than the configured budget.
class BudgetError : public Error {
public:
    BudgetError(ErrorCode code, const std::string& what, std::string budget, std::string actual)
        : Error(code, what + " (budget " + budget + ", required " + actual + ")"),
          budget_(std::move(budget)), actual_(std::move(actual)) {}
    const std::string& budget() const noexcept { return budget_; }
    const std::string& actual() const noexcept { return actual_; }

private:
    std::string budget_;
    std::string actual_;
};

class SearchSpaceTooLarge : public BudgetError {
public:
    SearchSpaceTooLarge(std::string budget, std::string actual)
        : BudgetError(ErrorCode::SearchSpaceTooLarge, "search space too large",
                      std::move(budget), std::move(actual)) {}
};

class BudgetExceeded : public BudgetError {
public:
    BudgetExceeded(std::string budget, std::string actual)
        : BudgetError(ErrorCode::BudgetExceeded, "budget exceeded",
                      std::move(budget), std::move(actual)) {}
};

class UnsupportedDimension : public Error {
public:
    explicit UnsupportedDimension(const std::string& what)
        : Error(ErrorCode::UnsupportedDimension, what) {}
};

class ZeroValue : public Error {
public:
    ZeroValue() : Error(ErrorCode::ZeroValue, "polynomial value is zero") {}
};

class MissingDensities : public Error {
public:
    explicit MissingDensities(std::uint64_t prime)
        : Error(ErrorCode::MissingDensities,
                "density unavailable for prime " + std::to_string(prime)),
          prime_(prime) {}
    std::uint64_t prime() const noexcept { return prime_; }

private:
    std::uint64_t prime_;
};

class AlphaTooLarge : public Error {
public:
    explicit AlphaTooLarge(std::string alpha0)
        : Error(ErrorCode::AlphaTooLarge, "alpha must be < alpha0 = " + alpha0),
          alpha0_(std::move(alpha0)) {}
    const std::string& alpha0() const noexcept { return alpha0_; }

private:
    std::string alpha0_;
};

/// The requested ball holds no point of the right denominator. If doubling the
/// radius found one, `smallest_radius` names the first radius that did.
class NoWitness : public Error {
public:
    NoWitness(std::string radius_tried, std::string smallest_radius)
        : Error(ErrorCode::NoWitness,
                "no point in ball of radius " + radius_tried +
                    (smallest_radius.empty() ? std::string()
                                             : "; first non-empty radius " + smallest_radius)),
          smallest_radius_(std::move(smallest_radius)) {}
    const std::string& smallest_radius() const noexcept { return smallest_radius_; }

private:
    std::string smallest_radius_;
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(double residual)
        : Error(ErrorCode::ConvergenceFailure,
                "eigensolver did not converge, residual " + std::to_string(residual)),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class LevelInsufficient : public Error {
public:
    explicit LevelInsufficient(unsigned level)
        : Error(ErrorCode::LevelInsufficient,
                "integrand not constant on cosets at level exponent " + std::to_string(level)),
          level_(level) {}
    unsigned level() const noexcept { return level_; }

private:
    unsigned level_;
};

class NoRecurrenceFound : public Error {
public:
    explicit NoRecurrenceFound(unsigned max_order)
        : Error(ErrorCode::NoRecurrenceFound,
                "no linear recurrence up to order " + std::to_string(max_order)) {}
};

class Aborted : public Error {
public:
    Aborted() : Error(ErrorCode::Aborted, "computation aborted") {}
};

} // namespace dioph
