#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "imann/benchmarks.hpp"
#include "imann/network.hpp"

namespace imann {

/// One labelled sample: input point and measured system output.
struct DataPoint {
  std::vector<double> x;
  double y;
};

/// Training samples. At least one point; input points are distinct.
class Dataset {
 public:
  explicit Dataset(std::vector<DataPoint> points);

  const std::vector<DataPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<DataPoint> points_;
};

/// The hybrid predictor: the network supplies the delegated subfunction
/// values, the model formulation combines them with the raw input into the
/// final prediction.
struct HybridPredictor {
  NetworkSpec spec;
  std::vector<double> weights;
  ModelFormulation formulation;
};

/// Builds a predictor, checking that the network matches the formulation
/// (n_in = input dimension, n_out = subfunction count) and that the weight
/// vector has the right length with finite entries.
HybridPredictor make_hybrid(NetworkSpec spec, std::vector<double> weights,
                            const ModelFormulation& formulation);

/// Model output at x; throws EvaluationError when the composition produces
/// a non-finite value.
double predict(const HybridPredictor& p, std::span<const double> x);

/// Ordering sentinel for candidates whose predictions blow up: ranks after
/// every finite fitness.
inline constexpr double worst_fitness() {
  return std::numeric_limits<double>::infinity();
}

/// Training fitness: sum of squared prediction errors over the dataset.
/// Non-finite predictions yield worst_fitness() instead of an exception.
double fitness(const HybridPredictor& p, const Dataset& data);

/// Objective the weight optimizer minimizes: w -> fitness of the predictor
/// built from w. Pure and safe to call concurrently for different w.
/// Requires every dataset point to lie inside the formulation domain.
std::function<double(std::span<const double>)> objective_for(
    const NetworkSpec& spec, const ModelFormulation& formulation,
    const Dataset& data);

}  // namespace imann
