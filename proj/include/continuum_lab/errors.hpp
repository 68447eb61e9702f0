#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace continuum_lab {

// Invalid input: out-of-range parameters, mismatched ambient spaces,
// disconnected sets passed where a continuum is required.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request exceeds what can be built or enumerated. achievable() reports the
// largest parameter value that would have succeeded (0 if unknown).
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t achievable)
      : std::runtime_error(what), achievable_(achievable) {}

  std::size_t achievable() const noexcept { return achievable_; }

 private:
  std::size_t achievable_;
};

// An operation was called on an object that does not satisfy its contract,
// e.g. a crookedness check on a pattern whose containment flags are not set.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace continuum_lab
