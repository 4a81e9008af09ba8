#pragma once

#include <stdexcept>
#include <string>

namespace ideal_moments {

// Bad field descriptor or parameters (non-squarefree d, m = 2 mod 4, ...).
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two ideals from different fields were combined.
class FieldMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested table or enumeration would exceed the configured caps.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact-integer range exhausted.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Argument at or too close to a pole of a zeta or L-function.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Any other precondition violation (non-prime p, bad z range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ideal_moments
