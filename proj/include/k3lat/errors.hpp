#pragma once

#include <stdexcept>
#include <string>

namespace k3lat {

// Base of every error thrown by the library. The CLI maps the subclasses
// onto exit codes (see exit_code()).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch (non-square, wrong block sizes, ...).
struct DimensionError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Singular Gram matrix where a nondegenerate lattice is required.
struct DegeneracyError : DomainError {
  using DomainError::DomainError;
};

// Data that contradicts itself: inexact division in the discriminant chain,
// census/profile mismatch, non-integral rank, ...
struct InconsistencyError : Error {
  using Error::Error;
};

// A search or enumeration bound was exceeded.
struct ResourceError : Error {
  using Error::Error;
};

// Malformed input files.
struct ParseError : Error {
  using Error::Error;
};

// 0 success, 1 usage error, 2 mathematical inconsistency, 3 resource bound.
inline int exit_code(const Error& e) {
  if (dynamic_cast<const ResourceError*>(&e)) return 3;
  if (dynamic_cast<const ParseError*>(&e)) return 1;
  return 2;
}

}  // namespace k3lat
