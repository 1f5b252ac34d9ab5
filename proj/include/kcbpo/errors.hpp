#pragma once

#include <stdexcept>
#include <string>

namespace kcbpo {

// Malformed input text (instance files, c2d files, CLI arguments).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A size guard refused the request (e.g. brute force over too many vertices).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A circuit lacks a structural property the operation needs.
struct StructureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration produced more items than the caller allowed.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kcbpo
