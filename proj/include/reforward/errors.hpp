#pragma once

#include <stdexcept>
#include <string>

namespace reforward {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (bad JSON/DOT syntax, schema violation).
struct ParseError : Error {
  using Error::Error;
};

/// Structurally invalid graph: cycle, self-loop, duplicate edge in strict
/// mode, isolated vertex in strict mode, negative cost.
struct ValidationError : Error {
  using Error::Error;
};

/// Exhaustive enumeration refused because the instance is too large.
struct SizeLimitError : Error {
  using Error::Error;
};

/// A division-tree node could not be decomposed, or its division failed the
/// partition checks. Signals a graph outside the theory's assumptions.
struct DecompositionError : Error {
  using Error::Error;
};

/// A cross-check failed (simulator peak vs solution total, solver sanity).
struct InternalError : Error {
  using Error::Error;
};

}  // namespace reforward
