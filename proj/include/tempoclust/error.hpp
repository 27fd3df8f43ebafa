#pragma once

#include <stdexcept>
#include <string>

namespace tempoclust {

// Malformed input data: CSV structure, cross references, synthesis specs.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violation on an otherwise well-formed call.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Caller-level misuse (bad flags, missing files); maps to exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tempoclust
