#pragma once

#include <stdexcept>
#include <string>

namespace ovc {

// Base for all library errors so callers can catch everything from this
// project in one handler when they don't care about the category.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File / stream problems: unreadable input, malformed packet framing.
struct IoError : Error {
  using Error::Error;
};

// A scheme (or scheme-constructor parameter set) violates its invariants.
struct SchemeError : Error {
  using Error::Error;
};

// A computation was refused because it exceeds a resource guard
// (state-space size, k limit, ...). Retry with smaller parameters.
struct GuardError : Error {
  using Error::Error;
};

// Linear-algebra failure: rank-deficient system where a unique solution
// was required, or an inconsistent augmented system.
struct LinearSystemError : Error {
  using Error::Error;
};

// Protocol misuse or data corruption detected while decoding: mixed class
// tags in a recode set, dimension mismatches, contradictory packet rows.
struct DecodeError : Error {
  using Error::Error;
};

}  // namespace ovc
