#pragma once

#include <stdexcept>

namespace svcnet {

/// Base class for all svcnet errors. The CLI maps these to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document: JSON, XML, or concept-reference syntax.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally valid input violating a model invariant: cycles, duplicate
/// identifiers, unresolvable references, infeasible parameters.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace svcnet
