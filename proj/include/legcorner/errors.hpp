#pragma once

#include <stdexcept>
#include <string>

namespace legcorner {

/// Argument outside the admissible range of an operation (h <= 0, a(r) <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Valid input for which the requested construction does not exist,
/// e.g. Jacobi polynomials with a nonzero second-order permeability term.
class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Series evaluated at or beyond its (safety-reduced) convergence radius.
class OutOfRadius : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iterative method (Newton, relaxation, Picard) did not reach tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Legendre map has a (near-)vanishing Jacobian at the queried point.
class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// More than one hodograph preimage was found, or a converged root changed
/// the Jacobian sign relative to its anchor.
class MultivaluedMap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace legcorner
