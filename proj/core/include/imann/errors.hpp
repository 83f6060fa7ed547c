#pragma once

#include <stdexcept>
#include <string>

namespace imann {

/// Raised when a model, network, or integrand produces a non-finite value.
/// Callers that drive stochastic search catch this and rank the candidate
/// last instead of aborting the run.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the search distribution's covariance can no longer be
/// factorized (non-positive eigenvalues or condition number past the cap).
class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace imann
