#pragma once

#include <stdexcept>
#include <string>

namespace bumplab {

// Invalid argument for a mathematical domain (negative t, p <= 1, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Out-of-range configuration parameter (eta, a, epsilon, shift, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Iteration limit reached before the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Set with zero measure passed to an averaging/norm operation.
class DegenerateSetError : public std::invalid_argument {
 public:
  explicit DegenerateSetError(const std::string& what) : std::invalid_argument(what) {}
};

// Grid window does not cover the data it is asked to act on.
class CoverageError : public std::invalid_argument {
 public:
  explicit CoverageError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation precondition violated (e.g. stopping level below the admissible
// threshold on a finite-measure window).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A verified mathematical invariant failed; carries a human-readable witness.
// CLI maps this to exit code 1, all other errors to exit code 2.
class CheckFailure : public std::runtime_error {
 public:
  CheckFailure(const std::string& what, const std::string& witness)
      : std::runtime_error(what + " [witness: " + witness + "]"), witness_(witness) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace bumplab
