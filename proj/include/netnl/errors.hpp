#pragma once

#include <stdexcept>
#include <string>

namespace netnl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A 4x4 matrix failed the density-operator invariants (hermiticity, unit
// trace, positive semidefiniteness).
class InvalidDensity : public Error {
 public:
  using Error::Error;
};

// Channel parameters violate the validity constraints of their class.
class InvalidChannel : public Error {
 public:
  using Error::Error;
};

// |alpha|^2 + |beta|^2 strayed too far from 1.
class NormViolation : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Usage pattern inconsistent with the scenario (wrong length, k = 0, ...).
class PatternMismatch : public Error {
 public:
  using Error::Error;
};

class TopologyError : public Error {
 public:
  using Error::Error;
};

// Joint Hilbert space too large for direct simulation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Channel does not have the zero structure required by the requested
// improper-parameter case.
class CaseMismatch : public Error {
 public:
  using Error::Error;
};

// A closed-form identity failed to reproduce the directly computed value.
class FormulaMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace netnl
