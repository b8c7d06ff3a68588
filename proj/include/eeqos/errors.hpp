#pragma once

#include <stdexcept>
#include <string>

namespace eeqos {

/// Raised when a configuration document or a single parameter fails
/// validation. The message always names the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when quadrature or another numerical routine cannot deliver a
/// trustworthy value.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SolverFailure {
  infeasible,      // constraint unreachable even at Pmax
  unstable,        // arrival rate exceeds service even at Pmax
  no_solution,     // no sign change inside the search bracket
  max_iterations,  // bracket failed to shrink below tolerance
};

class SolverError : public std::runtime_error {
 public:
  SolverError(SolverFailure kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  SolverFailure kind() const { return kind_; }

 private:
  SolverFailure kind_;
};

}  // namespace eeqos
