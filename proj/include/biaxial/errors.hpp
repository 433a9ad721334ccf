#pragma once

#include <stdexcept>
#include <string>

namespace biaxial {

/// Argument outside the supported domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole (Gamma at non-positive integers, divergent Gauss sum).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Field and source points coincide (r = 0).
class CoincidenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series did not reach its tolerance within the term cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense system is numerically singular.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

}  // namespace biaxial
