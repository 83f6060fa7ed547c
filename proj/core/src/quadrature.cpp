#include "imann/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "imann/errors.hpp"

namespace imann {

Domain::Domain(std::vector<Interval> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) {
    throw std::invalid_argument("Domain: needs at least one dimension");
  }
  for (const Interval& b : bounds_) {
    if (!(b.lo < b.hi)) {
      throw std::invalid_argument("Domain: requires lo < hi in every dimension");
    }
  }
}

double Domain::volume() const {
  double v = 1.0;
  for (const Interval& b : bounds_) v *= b.hi - b.lo;
  return v;
}

bool Domain::contains(std::span<const double> x) const {
  if (x.size() != bounds_.size()) return false;
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (x[i] < bounds_[i].lo || x[i] > bounds_[i].hi) return false;
  }
  return true;
}

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1 || n > 256) {
    throw std::invalid_argument("gauss_legendre_rule: unsupported rule size " +
                                std::to_string(n));
  }

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  // Roots come in +/- pairs; solve for the nonnegative half and mirror.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: p1 = P_n(z), p2 = P_{n-1}(z).
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule map_rule(const QuadratureRule& rule, double lo, double hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("map_rule: requires lo < hi");
  }
  const double center = 0.5 * (hi + lo);
  const double scale = 0.5 * (hi - lo);
  QuadratureRule mapped;
  mapped.nodes.reserve(rule.nodes.size());
  mapped.weights.reserve(rule.weights.size());
  for (double x : rule.nodes) mapped.nodes.push_back(center + scale * x);
  for (double w : rule.weights) mapped.weights.push_back(scale * w);
  return mapped;
}

namespace {

double checked_abs_diff(const RealFunction& predict, const RealFunction& target,
                        std::span<const double> x) {
  const double p = predict(x);
  const double t = target(x);
  if (!std::isfinite(p) || !std::isfinite(t)) {
    throw EvaluationError("error_integral: non-finite function value");
  }
  return std::abs(p - t);
}

}  // namespace

double error_integral(const RealFunction& predict, const RealFunction& target,
                      const Domain& domain, int points_per_dim) {
  if (domain.dimension() > 2) {
    throw std::invalid_argument("error_integral: only 1- and 2-D domains supported");
  }
  const QuadratureRule base = gauss_legendre_rule(points_per_dim);

  if (domain.dimension() == 1) {
    const QuadratureRule rule = map_rule(base, domain.bound(0).lo, domain.bound(0).hi);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x[1] = {rule.nodes[i]};
      sum += rule.weights[i] * checked_abs_diff(predict, target, x);
    }
    return sum;
  }

  const QuadratureRule rx = map_rule(base, domain.bound(0).lo, domain.bound(0).hi);
  const QuadratureRule ry = map_rule(base, domain.bound(1).lo, domain.bound(1).hi);
  double sum = 0.0;
  for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ry.nodes.size(); ++j) {
      const double x[2] = {rx.nodes[i], ry.nodes[j]};
      row += ry.weights[j] * checked_abs_diff(predict, target, x);
    }
    sum += rx.weights[i] * row;
  }
  return sum;
}

}  // namespace imann
