#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace imann {

/// Search setup for one optimization attempt. lambda = 0 picks the default
/// population size 4 + floor(3 ln D). The initial step size and budget
/// defaults are calibrated on the hybrid training landscapes: wide initial
/// steps drive the weight search into sharp interpolants that fit the
/// training points and nothing else, so the default starts narrow.
struct CmaConfig {
  int dimension = 0;
  std::vector<double> initial_mean;  // empty means the zero vector
  double initial_sigma = 0.1;
  int lambda = 0;
  long max_evaluations = 600000;
  double fitness_target = 1e-12;
  std::uint64_t seed = 0;
  double condition_cap = 1e14;
};

int default_population_size(int dimension);

/// Outcome of optimize(): the best candidate ever evaluated, the budget
/// spent, and the best-so-far fitness after each generation. aborted is set
/// when the covariance factorization failed before the budget ran out.
struct OptimizationResult {
  std::vector<double> best_vector;
  double best_fitness = 0.0;
  long evaluations_used = 0;
  std::vector<std::pair<long, double>> history;
  bool aborted = false;
};

/// Rank-based evolution strategy state driven through the ask/tell
/// protocol: ask() samples one generation of candidates, tell() feeds their
/// fitnesses back. Single owner; calls must alternate. Candidate sampling
/// is deterministic given the seed and call history.
class CmaState {
 public:
  explicit CmaState(const CmaConfig& config);
  ~CmaState();
  CmaState(CmaState&&) noexcept;
  CmaState& operator=(CmaState&&) noexcept;
  CmaState(const CmaState&) = delete;
  CmaState& operator=(const CmaState&) = delete;

  /// Samples lambda candidates from mean + sigma * N(0, C). Throws
  /// DecompositionError when the covariance can no longer be factorized
  /// (callers treat the attempt as aborted).
  std::vector<std::vector<double>> ask();

  /// Rank-based update from the candidates returned by the matching ask().
  /// Fitnesses must be finite or +infinity (the worst-rank sentinel);
  /// selection uses ranks only, ties keep submission order.
  void tell(const std::vector<std::vector<double>>& candidates,
            std::span<const double> fitnesses);

  int dimension() const;
  int lambda() const;
  long generation() const;
  long evaluations() const;
  double sigma() const;
  std::vector<double> mean() const;
  const std::vector<double>& best_vector() const;
  double best_fitness() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Ask/tell loop until fitness_target is reached or the next generation
/// would exceed max_evaluations. The objective must be pure.
OptimizationResult optimize(
    const std::function<double(std::span<const double>)>& objective,
    const CmaConfig& config);

}  // namespace imann
