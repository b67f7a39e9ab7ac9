#pragma once

#include <stdexcept>
#include <string>

namespace lbxm {

/// Base of every exception thrown by lbxm.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shapes of matrices, tensors or algebras do not fit together.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// An operation was called on input that violates its precondition
/// (e.g. quotient by a non-ideal, converse direction without a CON flag).
struct PreconditionFailed : Error {
  using Error::Error;
};

/// Malformed serialized input or unknown identifiers.
struct ParseError : Error {
  using Error::Error;
};

/// Arithmetic outside the field (division by zero).
struct DomainError : Error {
  using Error::Error;
};

/// A result that the theory guarantees failed to materialize.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace lbxm
