#include "imann/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "imann/errors.hpp"

namespace imann {

Dataset::Dataset(std::vector<DataPoint> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("Dataset: needs at least one point");
  }
  std::vector<const DataPoint*> order;
  order.reserve(points_.size());
  for (const DataPoint& p : points_) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const DataPoint* a, const DataPoint* b) {
    return a->x < b->x;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i - 1]->x == order[i]->x) {
      throw std::invalid_argument("Dataset: input points must be distinct");
    }
  }
}

HybridPredictor make_hybrid(NetworkSpec spec, std::vector<double> weights,
                            const ModelFormulation& formulation) {
  validate(spec);
  if (spec.n_in != formulation.dimension()) {
    throw std::invalid_argument("make_hybrid: network input width " +
                                std::to_string(spec.n_in) + " != " +
                                formulation.id + " dimension");
  }
  if (spec.n_out != formulation.subfunction_count) {
    throw std::invalid_argument("make_hybrid: network output width " +
                                std::to_string(spec.n_out) + " != " +
                                formulation.id + " subfunction count");
  }
  if (static_cast<int>(weights.size()) != dimensionality(spec)) {
    throw std::invalid_argument("make_hybrid: weight vector has wrong length");
  }
  for (double v : weights) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("make_hybrid: weights must be finite");
    }
  }
  return HybridPredictor{std::move(spec), std::move(weights), formulation};
}

double predict(const HybridPredictor& p, std::span<const double> x) {
  const std::vector<double> s = forward(p.spec, p.weights, x);
  const double value = combine(p.formulation, x, s);
  if (!std::isfinite(value)) {
    throw EvaluationError("predict: non-finite model output");
  }
  return value;
}

namespace {

/// Shared core of fitness() and the optimizer objective. Returns
/// worst_fitness() as soon as any prediction is non-finite.
double sum_squared_error(const NetworkSpec& spec, const WeightLayout& layout,
                         const ModelFormulation& formulation,
                         std::span<const double> w, const Dataset& data) {
  ForwardScratch scratch;
  std::vector<double> s(static_cast<std::size_t>(spec.n_out));
  double total = 0.0;
  for (const DataPoint& point : data.points()) {
    try {
      forward_into(spec, layout, w, point.x, s, scratch);
    } catch (const EvaluationError&) {
      return worst_fitness();
    }
    const double value = formulation.combiner(point.x, s);
    if (!std::isfinite(value)) return worst_fitness();
    const double r = value - point.y;
    total += r * r;
  }
  if (!std::isfinite(total)) return worst_fitness();
  return total;
}

}  // namespace

double fitness(const HybridPredictor& p, const Dataset& data) {
  return sum_squared_error(p.spec, pack_layout(p.spec), p.formulation, p.weights,
                           data);
}

std::function<double(std::span<const double>)> objective_for(
    const NetworkSpec& spec, const ModelFormulation& formulation,
    const Dataset& data) {
  validate(spec);
  if (spec.n_in != formulation.dimension() ||
      spec.n_out != formulation.subfunction_count) {
    throw std::invalid_argument("objective_for: network does not fit " +
                                formulation.id);
  }
  for (const DataPoint& point : data.points()) {
    if (!formulation.domain().contains(point.x)) {
      throw std::invalid_argument("objective_for: dataset point outside the " +
                                  formulation.id + " domain");
    }
  }
  const WeightLayout layout = pack_layout(spec);
  const int expected = layout.total;
  return [spec, layout, formulation, data, expected](std::span<const double> w) {
    if (static_cast<int>(w.size()) != expected) {
      throw std::invalid_argument("objective: weight vector has wrong length");
    }
    return sum_squared_error(spec, layout, formulation, w, data);
  };
}

}  // namespace imann
