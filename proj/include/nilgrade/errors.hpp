#pragma once

#include <stdexcept>
#include <string>

namespace nilgrade {

/// Base of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input cannot be processed (wrong shape, failed precondition).
struct DomainError : Error {
  using Error::Error;
};

/// A configured computational budget ran out before a certified answer was reached.
struct BudgetExhausted : Error {
  using Error::Error;
};

/// An internal postcondition failed. Always a bug.
struct InvariantViolation : Error {
  using Error::Error;
};

struct SingularMatrix : DomainError {
  SingularMatrix() : DomainError("matrix is singular") {}
  using DomainError::DomainError;
};
struct NotSublattice : DomainError {
  NotSublattice() : DomainError("second lattice is not contained in the first") {}
};
struct NotNilpotent : DomainError {
  NotNilpotent() : DomainError("algebra is not nilpotent") {}
};
struct NotLie : DomainError {
  NotLie() : DomainError("algebra is not a Lie algebra") {}
};
struct BadComplement : DomainError {
  using DomainError::DomainError;
};
struct NotAutomorphism : DomainError {
  using DomainError::DomainError;
};
struct NotCarnot : DomainError {
  NotCarnot() : DomainError("algebra is not Carnot") {}
};
struct BadGrading : DomainError {
  using DomainError::DomainError;
};
struct NotNonnegativeGrading : DomainError {
  NotNonnegativeGrading() : DomainError("grading has negative degrees") {}
};
struct DoesNotStabilize : DomainError {
  DoesNotStabilize() : DomainError("matrix does not map the lattice into itself") {}
};
struct ParseError : DomainError {
  using DomainError::DomainError;
};
struct ValidationError : DomainError {
  using DomainError::DomainError;
};

struct PrecisionExhausted : BudgetExhausted {
  PrecisionExhausted() : BudgetExhausted("precision budget exhausted before moduli were certified") {}
};
struct BoxTooLarge : BudgetExhausted {
  BoxTooLarge() : BudgetExhausted("lattice enumeration budget exceeded") {}
};
struct ClassTooLarge : BudgetExhausted {
  explicit ClassTooLarge(int c)
      : BudgetExhausted("nilpotency class " + std::to_string(c) + " exceeds the configured cap") {}
};

}  // namespace nilgrade
