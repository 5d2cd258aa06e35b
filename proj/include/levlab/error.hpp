#pragma once

#include <stdexcept>
#include <string>

namespace levlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (Gamma poles, digamma at x <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition on a structured input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NonUnitaryInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotAdmissible : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class CornerMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Adaptive refinement (bisection, grid doubling, quadrature) ran out of budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NearSingularBracket : public Error {
 public:
  using Error::Error;
};

class ExtrapolationUnstable : public Error {
 public:
  using Error::Error;
};

class DegenerateClassification : public Error {
 public:
  using Error::Error;
};

class AmbiguousClassification : public Error {
 public:
  using Error::Error;
};

class StiffIntegration : public Error {
 public:
  using Error::Error;
};

class ResonanceSuspected : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace levlab
