#pragma once

#include <stdexcept>
#include <string>

namespace sparseprime {

// Argument outside the documented domain of an operation.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Truncated kappa denominator too close to zero for the tail bound to certify a value.
struct DenominatorTooSmall : std::runtime_error {
  explicit DenominatorTooSmall(const std::string& msg) : std::runtime_error(msg) {}
};

// Modular inverse required by residue_a does not exist.
struct NotInvertible : std::runtime_error {
  explicit NotInvertible(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration window exceeds the supported size or memory cap.
struct WindowTooLarge : std::runtime_error {
  explicit WindowTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested exact computation exceeds the enumeration budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// An observed value exceeds the asserted square-root-cancellation bound.
struct BoundViolation : std::runtime_error {
  explicit BoundViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Riemann-sum grid below the minimum resolution for the requested region.
struct GridTooCoarse : std::runtime_error {
  explicit GridTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sparseprime
