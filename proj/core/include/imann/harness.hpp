#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imann/baseline.hpp"
#include "imann/benchmarks.hpp"
#include "imann/cmaes.hpp"
#include "imann/hybrid.hpp"
#include "imann/records.hpp"

namespace imann {

/// Equispaced grid over the domain, endpoints included, per_dim points per
/// dimension (per_dim = 1 gives the midpoint). Multi-dimensional grids are
/// the Cartesian product in row-major order (last dimension fastest).
std::vector<std::vector<double>> sample_grid(const Domain& domain, int per_dim);

/// Grid dataset labelled by the formulation's target. 1-D formulations take
/// size points; 2-D formulations require size to be a perfect square and
/// use sqrt(size) points per dimension.
Dataset build_dataset(const ModelFormulation& formulation, int size);

/// One experiment: a formulation, a method, and a dataset-size sweep with
/// seeded restarts per size.
struct ExperimentConfig {
  std::string formulation_id = "f1";
  std::string method = "imann";  // "imann" or "dnn"
  std::string arch;              // empty picks the method's default
  std::vector<int> sizes;        // empty picks the per-dimension defaults
  int restarts = 20;
  std::uint64_t base_seed = 0;
  int quad_points = 80;
  int threads = 1;  // concurrent attempts; 0 = hardware concurrency
  CmaConfig cma;    // dimension/seed filled per attempt
  TrainConfig train;
};

/// Default dataset sizes: {3, 5, 9, 17, 33, 65} for 1-D formulations,
/// {4, 16, 64, 256} for 2-D.
std::vector<int> default_sizes(int dimension);

/// Default architectures: imann uses <dim>-5-5-<k>; dnn uses 1-32-16-16-1
/// in 1-D and 2-32-32-16-1 in 2-D.
std::string default_architecture(const std::string& method,
                                 const ModelFormulation& formulation);

/// Runs one seeded attempt on a prepared dataset. The attempt seed is
/// base_seed XOR (size_index * 1000 + restart_index). Optimizer aborts and
/// trainer divergence are reported through status ("aborted"); other
/// evaluation failures give status "failed" with an infinite error
/// integral. Never throws for per-attempt failures.
RunRecord run_attempt(const ExperimentConfig& config, const Dataset& dataset,
                      int size_index, int restart_index);

struct ExperimentResult {
  std::vector<RunRecord> attempts;       // sorted by (size, restart_index)
  std::vector<RunRecord> best_per_size;  // minimal R among usable attempts
};

/// Full sweep: for every size, runs `restarts` attempts (in parallel when
/// threads allows) and selects the attempt with minimal error integral.
/// Failed attempts are excluded from selection unless every attempt of a
/// size failed.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace imann
