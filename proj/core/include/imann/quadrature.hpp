#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace imann {

/// One closed interval [lo, hi] of an axis-aligned box domain.
struct Interval {
  double lo;
  double hi;
};

/// Axis-aligned box of per-dimension intervals; the integration and
/// sampling region. Immutable after construction.
class Domain {
 public:
  /// Requires at least one dimension and lo < hi everywhere.
  explicit Domain(std::vector<Interval> bounds);

  std::size_t dimension() const { return bounds_.size(); }
  const Interval& bound(std::size_t dim) const { return bounds_[dim]; }
  const std::vector<Interval>& bounds() const { return bounds_; }

  double volume() const;
  bool contains(std::span<const double> x) const;

 private:
  std::vector<Interval> bounds_;
};

/// Nodes and positive weights of a 1-D quadrature rule. On the reference
/// interval [-1, 1] the weights sum to 2; mapped rules sum to hi - lo.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes are the roots of the
/// degree-n Legendre polynomial, found by Newton iteration from the cosine
/// initial guess and converged to 1e-15; exact for polynomials of degree
/// <= 2n - 1. Supported sizes: 1 <= n <= 256.
QuadratureRule gauss_legendre_rule(int n);

/// Affine image of a rule on [lo, hi]; weights scale by (hi - lo) / 2.
QuadratureRule map_rule(const QuadratureRule& rule, double lo, double hi);

/// Scalar function of a 1- or 2-D input point.
using RealFunction = std::function<double(std::span<const double>)>;

/// Accuracy indicator R = integral over the domain of |predict - target|,
/// computed on a tensor-product Gauss-Legendre grid with points_per_dim
/// nodes per dimension. Domains of dimension 1 and 2 are supported.
/// Non-finite function values raise EvaluationError.
double error_integral(const RealFunction& predict, const RealFunction& target,
                      const Domain& domain, int points_per_dim = 80);

}  // namespace imann
