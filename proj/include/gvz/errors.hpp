#pragma once

#include <stdexcept>
#include <string>

namespace gvz {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input / construction errors.
struct MalformedFile : Error { using Error::Error; };
struct NotAGroup : Error { using Error::Error; };
struct NotAPermutation : Error { using Error::Error; };
struct OrderCapExceeded : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };
struct ParamOutOfRange : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };

// Character table / analysis errors. These indicate an implementation bug
// (or a counterexample to a cited theorem), never bad user input.
struct LiftFailure : Error { using Error::Error; };
struct NotCentralElement : Error { using Error::Error; };
struct SubVerdictDisagreement : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

}  // namespace gvz
