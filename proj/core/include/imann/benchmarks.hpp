#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imann/quadrature.hpp"

namespace imann {

/// Polynomial target (x^5 - 16 x^3 + 5 x^2) / 2; benchmark domain [-4, 4].
double poly_target(double x);

/// Modified Rosenbrock target, sum over i of (x_{i+1} - x_i^2)^4 + (1 - x_i)^4.
/// Requires at least 2 components.
double rosenbrock_target(std::span<const double> x);

/// A benchmark system: input dimension, domain, and the measurable output.
struct TargetSystem {
  std::string id;
  int dimension;
  Domain domain;
  std::function<double(std::span<const double>)> evaluate;
};

/// A model formulation f_i: the target it reconstructs, the number of
/// subfunction slots k, the combiner that maps (x, subfunction values) to
/// the model output, and the oracle giving the exact subfunction values.
/// Combining the oracle's values reproduces the target everywhere.
struct ModelFormulation {
  std::string id;
  TargetSystem target;
  int subfunction_count;
  std::function<double(std::span<const double>, std::span<const double>)> combiner;
  std::function<std::vector<double>(std::span<const double>)> ideal;

  int dimension() const { return target.dimension; }
  const Domain& domain() const { return target.domain; }
};

/// Model output for subfunction values s at input x.
/// Rejects wrong s length or wrong x dimension.
double combine(const ModelFormulation& f, std::span<const double> x,
               std::span<const double> s);

/// Exact subfunction values at x (e.g. f3 -> {x^2}; f9 -> {y - x^2, 1 - x}).
std::vector<double> ideal_subfunctions(const ModelFormulation& f,
                                       std::span<const double> x);

/// All nine formulations in order f1..f9. f1-f8 reconstruct the polynomial
/// target on [-4, 4]; f9 reconstructs the 2-D modified Rosenbrock target on
/// [-1.4, 1.6] x [-0.25, 3.75].
const std::vector<ModelFormulation>& formulation_registry();

/// Lookup by id ("f1".."f9"); throws std::invalid_argument on unknown ids.
const ModelFormulation& find_formulation(std::string_view id);

}  // namespace imann
