#include "ccrm/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "ccrm/error.hpp"
#include "ccrm/grid.hpp"

namespace ccrm {

double SampledFunction::operator()(double x) const {
  if (x < lo() - kCoordTol || x > hi() + kCoordTol)
    fail(ErrorCode::OutOfRange, "evaluation outside the sampled range");
  x = std::clamp(x, lo(), hi());
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  size_t i = (it == xs.begin()) ? 1 : static_cast<size_t>(it - xs.begin());
  if (i >= xs.size()) i = xs.size() - 1;
  double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

bool SampledFunction::strictly_positive() const {
  return std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; });
}

SampledFunction make_sampled(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size())
    fail(ErrorCode::SampleLengthMismatch,
         "abscissae and values must have equal length");
  if (xs.size() < 2)
    fail(ErrorCode::InvalidArgument, "need at least 2 samples");
  for (size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      fail(ErrorCode::InvalidArgument, "abscissae must be strictly increasing");
  for (double y : ys)
    if (!std::isfinite(y))
      fail(ErrorCode::InvalidArgument, "samples must be finite");
  return SampledFunction{std::move(xs), std::move(ys)};
}

SampledFunction constant_sampled(double lo, double hi, double value) {
  return make_sampled({lo, hi}, {value, value});
}

namespace {

// Simpson's rule on [a, b] for 1/f with f linear on the panel.
double simpson_reciprocal(const SampledFunction& f, double a, double b) {
  double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (1.0 / f(a) + 4.0 / f(m) + 1.0 / f(b));
}

}  // namespace

double integrate_reciprocal(const SampledFunction& f, double a, double b) {
  if (a > b) std::swap(a, b);
  if (a < f.lo() - kCoordTol || b > f.hi() + kCoordTol)
    fail(ErrorCode::OutOfRange, "integration range outside the sampled range");
  if (!f.strictly_positive())
    fail(ErrorCode::NonPositiveG, "samples must be strictly positive");
  a = std::clamp(a, f.lo(), f.hi());
  b = std::clamp(b, f.lo(), f.hi());
  if (a == b) return 0.0;

  // split at the knots, then a fixed even panel count per piece
  constexpr int kPanels = 8;
  double total = 0.0;
  double left = a;
  auto next_knot = std::upper_bound(f.xs.begin(), f.xs.end(), a);
  while (left < b) {
    double right = (next_knot != f.xs.end() && *next_knot < b) ? *next_knot : b;
    double step = (right - left) / kPanels;
    for (int p = 0; p < kPanels; ++p)
      total += simpson_reciprocal(f, left + p * step, left + (p + 1) * step);
    left = right;
    if (next_knot != f.xs.end()) ++next_knot;
  }
  return total;
}

}  // namespace ccrm
