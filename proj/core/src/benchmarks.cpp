#include "imann/benchmarks.hpp"

#include <stdexcept>
#include <utility>

namespace imann {

namespace {

double pow4(double t) {
  const double t2 = t * t;
  return t2 * t2;
}

}  // namespace

double poly_target(double x) {
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double x5 = x3 * x2;
  return (x5 - 16.0 * x3 + 5.0 * x2) / 2.0;
}

double rosenbrock_target(std::span<const double> x) {
  if (x.size() < 2) {
    throw std::invalid_argument("rosenbrock_target: needs at least 2 components");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double xi2 = x[i] * x[i];
    sum += pow4(x[i + 1] - xi2) + pow4(1.0 - x[i]);
  }
  return sum;
}

double combine(const ModelFormulation& f, std::span<const double> x,
               std::span<const double> s) {
  if (static_cast<int>(x.size()) != f.dimension()) {
    throw std::invalid_argument("combine: wrong input dimension for " + f.id);
  }
  if (static_cast<int>(s.size()) != f.subfunction_count) {
    throw std::invalid_argument("combine: wrong subfunction count for " + f.id);
  }
  return f.combiner(x, s);
}

std::vector<double> ideal_subfunctions(const ModelFormulation& f,
                                       std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dimension()) {
    throw std::invalid_argument("ideal_subfunctions: wrong input dimension for " +
                                f.id);
  }
  return f.ideal(x);
}

namespace {

TargetSystem poly_system() {
  return TargetSystem{
      "poly", 1, Domain({{-4.0, 4.0}}),
      [](std::span<const double> x) { return poly_target(x[0]); }};
}

TargetSystem rosenbrock_system() {
  return TargetSystem{
      "rosenbrock2", 2, Domain({{-1.4, 1.6}, {-0.25, 3.75}}),
      [](std::span<const double> x) { return rosenbrock_target(x); }};
}

using Combiner = std::function<double(std::span<const double>, std::span<const double>)>;
using Oracle = std::function<std::vector<double>(std::span<const double>)>;

ModelFormulation poly_formulation(std::string id, int k, Combiner c, Oracle o) {
  return ModelFormulation{std::move(id), poly_system(), k, std::move(c), std::move(o)};
}

std::vector<ModelFormulation> build_registry() {
  std::vector<ModelFormulation> fs;
  fs.reserve(9);

  // One subfunction: a * x^5, a * x^4, a * x^3, and the whole x^5 term.
  fs.push_back(poly_formulation(
      "f1", 1,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        const double x5 = x3 * x2;
        return (s[0] * x5 - 16.0 * x3 + 5.0 * x2) / 2.0;
      },
      [](std::span<const double>) { return std::vector<double>{1.0}; }));

  fs.push_back(poly_formulation(
      "f2", 1,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        const double x4 = x2 * x2;
        return (s[0] * x4 - 16.0 * x3 + 5.0 * x2) / 2.0;
      },
      [](std::span<const double> x) { return std::vector<double>{x[0]}; }));

  fs.push_back(poly_formulation(
      "f3", 1,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        return (s[0] * x3 - 16.0 * x3 + 5.0 * x2) / 2.0;
      },
      [](std::span<const double> x) { return std::vector<double>{x[0] * x[0]}; }));

  fs.push_back(poly_formulation(
      "f4", 1,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        return (s[0] - 16.0 * x3 + 5.0 * x2) / 2.0;
      },
      [](std::span<const double> x) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        return std::vector<double>{x3 * x2};
      }));

  // Two subfunctions: the x^5 and x^3 terms split at decreasing nonlinearity.
  fs.push_back(poly_formulation(
      "f5", 2,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        const double x5 = x3 * x2;
        return (s[0] * x5 + s[1] * x3 + 5.0 * x2) / 2.0;
      },
      [](std::span<const double>) { return std::vector<double>{1.0, -16.0}; }));

  fs.push_back(poly_formulation(
      "f6", 2,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x4 = x2 * x2;
        return (s[0] * x4 + s[1] * x2 + 5.0 * x2) / 2.0;
      },
      [](std::span<const double> x) {
        return std::vector<double>{x[0], -16.0 * x[0]};
      }));

  fs.push_back(poly_formulation(
      "f7", 2,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        return (s[0] * x3 + s[1] * x[0] + 5.0 * x2) / 2.0;
      },
      [](std::span<const double> x) {
        const double x2 = x[0] * x[0];
        return std::vector<double>{x2, -16.0 * x2};
      }));

  fs.push_back(poly_formulation(
      "f8", 2,
      [](std::span<const double> x, std::span<const double> s) {
        const double x2 = x[0] * x[0];
        return (s[0] + s[1] + 5.0 * x2) / 2.0;
      },
      [](std::span<const double> x) {
        const double x2 = x[0] * x[0];
        const double x3 = x2 * x[0];
        return std::vector<double>{x3 * x2, -16.0 * x3};
      }));

  // Rosenbrock split: both bracketed terms delegated.
  fs.push_back(ModelFormulation{
      "f9", rosenbrock_system(), 2,
      [](std::span<const double>, std::span<const double> s) {
        return pow4(s[0]) + pow4(s[1]);
      },
      [](std::span<const double> x) {
        return std::vector<double>{x[1] - x[0] * x[0], 1.0 - x[0]};
      }});

  return fs;
}

}  // namespace

const std::vector<ModelFormulation>& formulation_registry() {
  static const std::vector<ModelFormulation> registry = build_registry();
  return registry;
}

const ModelFormulation& find_formulation(std::string_view id) {
  for (const ModelFormulation& f : formulation_registry()) {
    if (f.id == id) return f;
  }
  throw std::invalid_argument("find_formulation: unknown formulation id '" +
                              std::string(id) + "'");
}

}  // namespace imann
