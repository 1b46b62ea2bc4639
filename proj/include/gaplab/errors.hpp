#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

// Precondition / malformed-input failures. CLI maps these to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Input lies outside the domain a local construction supports
// (e.g. a matrix outside the attained range of a projection map).
class OutOfRange : public std::domain_error {
 public:
  explicit OutOfRange(const std::string& what) : std::domain_error(what) {}
};

// Numerical procedure failed (solver breakdown, unitarity loss, ...).
// CLI maps these to exit code 3.
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaplab
