#pragma once

#include <stdexcept>
#include <string>

namespace dagas {

// Precondition violated by the caller's data (non-free source, unknown vertex, p out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A finite graph that breaks one of the agreeability conditions.
class AgreeabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Work would exceed a configured cap (exact oracles over 2^|V| colorings, subset scans).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dagas
