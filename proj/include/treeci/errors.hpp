#pragma once

#include <stdexcept>
#include <string>

namespace treeci {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A query names unknown variables, overlaps its sets, or leaves a required
// set empty.
struct QueryError : Error {
  using Error::Error;
};

// A model value breaks its own invariants: bad table size, mass not summing
// to one, asymmetric or indefinite covariance, zero cells where positivity
// is required.
struct ModelError : Error {
  using Error::Error;
};

// Infeasible generator or tolerance parameters.
struct ParamError : Error {
  using Error::Error;
};

// The requested check is outside its supported regime (e.g. discrete weak
// transitivity with a nonempty conditioning set).
struct RegimeError : Error {
  using Error::Error;
};

// A size cap was exceeded (scan variable counts, sweep sizes).
struct ResourceError : Error {
  using Error::Error;
};

// A graph does not have the required shape (self-loop, unknown endpoint,
// cycle where a forest is required).
struct StructureError : Error {
  using Error::Error;
};

// Unparseable input: JSON, CSV, or proof-script text. Messages carry
// location info where available.
struct FormatError : Error {
  using Error::Error;
};

// A deduction rule was applied with the wrong arity or to premises that do
// not match its schema.
struct RuleError : Error {
  using Error::Error;
};

// A proof script is structurally broken: non-sequential indices, dangling
// or forward premise references, malformed atoms.
struct ScriptError : Error {
  using Error::Error;
};

}  // namespace treeci
