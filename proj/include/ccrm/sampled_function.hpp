#pragma once

#include <vector>

namespace ccrm {

/// Piecewise-linear function given by samples at strictly increasing
/// abscissae. Evaluation outside [lo(), hi()] beyond kCoordTol throws
/// OutOfRange; within the tolerance band the value is clamped to the edge.
struct SampledFunction {
  std::vector<double> xs;
  std::vector<double> ys;

  double lo() const { return xs.front(); }
  double hi() const { return xs.back(); }
  double operator()(double x) const;
  bool strictly_positive() const;
};

/// Validates and packs samples (needs >= 2 points, strictly increasing xs).
SampledFunction make_sampled(std::vector<double> xs, std::vector<double> ys);

/// Two-point sampled representation of a constant function on [lo, hi].
SampledFunction constant_sampled(double lo, double hi, double value);

/// Composite Simpson quadrature of 1/f over [a, b], subdividing at the
/// sample knots so the integrand is smooth on every panel. Requires
/// [a, b] inside the sampled range and f strictly positive.
double integrate_reciprocal(const SampledFunction& f, double a, double b);

}  // namespace ccrm
