#pragma once

#include <optional>

#include "ccrm/sampled_function.hpp"

namespace ccrm {

/// A non-negative value that may be +infinity (distances between states in
/// unlinked constraint components).
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal inf() { return {0.0, true}; }
};

/// Closed-form lower/upper bracket, with the exact value when known.
struct Bound {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> exact;
};

/// Geodesic distance of the metric g = G^-2 on the line: the integral of 1/G
/// over [min(x,y), max(x,y)], by Simpson quadrature on the G samples.
double geodesic_distance(const SampledFunction& g_of_x, double x, double y);

/// Distance under the h-difference operator: |x - y| when x - y is an
/// integer multiple of h (within 1e-9 on the ratio), infinite otherwise.
ExtendedReal h_distance(double h, double x, double y);

/// Distance between width-eps uniform states under the h-difference
/// operator: |x - y| whenever eps is a multiple of h; otherwise the point
/// dichotomy h_distance applies unchanged.
ExtendedReal fat_distance(double h, double eps, double x, double y);

/// All routes pass through the hub at 0: |x| + |y| for x != y, else 0.
double sncf_distance(double x, double y);

/// Bracket for the q-difference distance: sqrt(q)|x-y| from below,
/// sqrt(q) * sncf_distance from above; exact (= the lower value) when x and
/// y lie on a common q-orbit (y = q^n x) or when the bracket collapses.
Bound q_bounds(double q, double x, double y);

/// Distance on the circle between uniform arcs of halfwidth eps centered
/// angle x apart: x while x <= pi - 2 eps, then the quadratic
/// (-x^2 + 2 pi x - (pi - 2 eps)^2) / (4 eps) up to x = pi.
double circle_rect_distance(double eps, double x);

/// Optimal cut location for the quadratic branch of circle_rect_distance:
/// (x - pi) / 2, reduced to [0, 2 pi). Requires pi - 2 eps <= x <= pi.
double cut_point(double eps, double x);

/// Lower bound 1 / operator_norm on distances between distinct points
/// induced by a bounded operator.
double min_length_bound(double operator_norm);

}  // namespace ccrm
