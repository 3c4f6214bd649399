#include "ccrm/closed_form.hpp"

#include <cmath>
#include <numbers>

#include "ccrm/error.hpp"
#include "ccrm/grid.hpp"

namespace ccrm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRatioTol = 1e-9;

bool is_integral(double ratio) {
  return std::abs(ratio - std::nearbyint(ratio)) <= kRatioTol;
}

}  // namespace

double geodesic_distance(const SampledFunction& g_of_x, double x, double y) {
  return integrate_reciprocal(g_of_x, x, y);
}

ExtendedReal h_distance(double h, double x, double y) {
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
  if (x == y) return ExtendedReal::finite(0.0);
  if (is_integral((x - y) / h)) return ExtendedReal::finite(std::abs(x - y));
  return ExtendedReal::inf();
}

ExtendedReal fat_distance(double h, double eps, double x, double y) {
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (is_integral(eps / h)) return ExtendedReal::finite(std::abs(x - y));
  return h_distance(h, x, y);
}

double sncf_distance(double x, double y) {
  return x == y ? 0.0 : std::abs(x) + std::abs(y);
}

Bound q_bounds(double q, double x, double y) {
  if (!(q > 0.0) || !(q < 1.0))
    fail(ErrorCode::BadRatio, "ratio q must lie in (0, 1)");
  double rootq = std::sqrt(q);
  Bound b;
  b.lower = rootq * std::abs(x - y);
  b.upper = rootq * sncf_distance(x, y);
  bool same_orbit = false;
  if (x == y) {
    same_orbit = true;
  } else if (x != 0.0 && y != 0.0 && std::signbit(x) == std::signbit(y)) {
    double n = std::log(y / x) / std::log(q);
    same_orbit = is_integral(n);
  }
  if (same_orbit || b.upper - b.lower <= 1e-12 * std::max(1.0, b.upper))
    b.exact = b.lower;
  return b;
}

double circle_rect_distance(double eps, double x) {
  if (!(eps > 0.0) || !(eps < 0.5 * kPi))
    fail(ErrorCode::OutOfDomain, "eps must lie in (0, pi/2)");
  if (!(x > 0.0) || x > kPi + kCoordTol)
    fail(ErrorCode::OutOfDomain, "x must lie in (0, pi]");
  double knee = kPi - 2.0 * eps;
  if (x <= knee) return x;
  return (-x * x + 2.0 * kPi * x - knee * knee) / (4.0 * eps);
}

double cut_point(double eps, double x) {
  if (!(eps > 0.0) || !(eps < 0.5 * kPi))
    fail(ErrorCode::OutOfDomain, "eps must lie in (0, pi/2)");
  double knee = kPi - 2.0 * eps;
  if (x < knee - kCoordTol || x > kPi + kCoordTol)
    fail(ErrorCode::OutOfDomain, "x must lie in [pi - 2 eps, pi]");
  return reduce_angle(0.5 * (x - kPi));
}

double min_length_bound(double operator_norm) {
  if (!(operator_norm > 0.0))
    fail(ErrorCode::InvalidArgument, "operator norm must be positive");
  return 1.0 / operator_norm;
}

}  // namespace ccrm
