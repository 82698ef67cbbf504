#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a precondition (dimension mismatch, flat form with no quadric, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A family parameter outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Degenerate induced metric, null normal, wrong causal character.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Grid too small for a central-difference stencil.
class StencilError : public Error {
 public:
  using Error::Error;
};

// Function evaluated outside its domain (f <= 0 in the profile ODEs, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace biharm
