#include "ccrm/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccrm/error.hpp"

namespace ccrm {

namespace {

constexpr double kPi = std::numbers::pi;

double overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

// signed angular difference in (-pi, pi]
double wrap_to_pi(double t) {
  double r = reduce_angle(t);
  return r > kPi ? r - 2.0 * kPi : r;
}

void check_support(const Grid& grid, double center, double halfwidth) {
  if (!(halfwidth > 0.0))
    fail(ErrorCode::InvalidArgument, "halfwidth must be positive");
  switch (grid.topology) {
    case Topology::Line:
      if (halfwidth < 0.5 * grid.spacing - kCoordTol)
        fail(ErrorCode::SupportBelowResolution,
             "support narrower than one grid cell");
      if (center - halfwidth < grid.window_lo - kCoordTol ||
          center + halfwidth > grid.window_hi + kCoordTol)
        fail(ErrorCode::SupportOutsideWindow,
             "support exceeds the grid window");
      return;
    case Topology::Circle:
      if (halfwidth < 0.5 * grid.spacing - kCoordTol)
        fail(ErrorCode::SupportBelowResolution,
             "support narrower than one grid cell");
      if (halfwidth >= kPi)
        fail(ErrorCode::SupportTooWide, "support would cover the circle");
      return;
    case Topology::QLattice:
      fail(ErrorCode::UnsupportedTopology,
           "interval states need a uniform grid");
  }
}

// overlap of the cell around `node` with [center - hw, center + hw],
// on the grid's own geometry
double cell_overlap(const Grid& grid, double node, double center, double hw) {
  double half = 0.5 * grid.spacing;
  if (grid.topology == Topology::Line)
    return overlap(node - half, node + half, center - hw, center + hw);
  double d = wrap_to_pi(node - center);
  double total = overlap(d - half, d + half, -hw, hw);
  total += overlap(d - half - 2.0 * kPi, d + half - 2.0 * kPi, -hw, hw);
  total += overlap(d - half + 2.0 * kPi, d + half + 2.0 * kPi, -hw, hw);
  return total;
}

StateMeasure normalized(GridPtr grid, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) fail(ErrorCode::Internal, "state has no mass");
  for (double& w : weights) w /= total;
  return StateMeasure{std::move(grid), std::move(weights)};
}

// exact integral over [a, b] of the piecewise-linear interpolant of
// `samples` placed uniformly on [-hw, hw]
double hat_integral(const std::vector<double>& samples, double hw, double a,
                    double b) {
  if (!(b > a)) return 0.0;
  size_t m = samples.size();
  double step = 2.0 * hw / static_cast<double>(m - 1);
  double total = 0.0;
  for (size_t j = 0; j + 1 < m; ++j) {
    double t0 = -hw + static_cast<double>(j) * step;
    double t1 = (j + 2 == m) ? hw : t0 + step;
    double u = std::max(a, t0);
    double v = std::min(b, t1);
    if (!(v > u)) continue;
    double slope = (samples[j + 1] - samples[j]) / (t1 - t0);
    double pu = samples[j] + (u - t0) * slope;
    double pv = samples[j] + (v - t0) * slope;
    total += 0.5 * (v - u) * (pu + pv);
  }
  return total;
}

}  // namespace

StateMeasure point_state(const GridPtr& grid, double x) {
  int k = nearest_node(*grid, x);
  if (grid->topology == Topology::QLattice) {
    if (std::abs(x - grid->nodes[k]) > kCoordTol)
      fail(ErrorCode::OutsideWindow, "coordinate is not a lattice node");
  } else if (std::abs(wrap_to_pi(x - grid->nodes[k])) >
             0.5 * grid->spacing + kCoordTol) {
    fail(ErrorCode::OutsideWindow, "coordinate does not resolve to a node");
  }
  std::vector<double> weights(grid->nodes.size(), 0.0);
  weights[static_cast<size_t>(k)] = 1.0;
  return StateMeasure{grid, std::move(weights)};
}

StateMeasure rect_state(const GridPtr& grid, double center, double halfwidth) {
  check_support(*grid, center, halfwidth);
  std::vector<double> weights(grid->nodes.size());
  for (size_t i = 0; i < weights.size(); ++i)
    weights[i] = cell_overlap(*grid, grid->nodes[i], center, halfwidth);
  return normalized(grid, std::move(weights));
}

StateMeasure density_state(const GridPtr& grid, double center, double halfwidth,
                           const std::vector<double>& samples) {
  check_support(*grid, center, halfwidth);
  if (samples.size() < 2)
    fail(ErrorCode::InvalidArgument, "need at least 2 density samples");
  for (double s : samples) {
    if (!std::isfinite(s) || s < 0.0)
      fail(ErrorCode::NegativeDensity, "density samples must be non-negative");
  }
  if (std::all_of(samples.begin(), samples.end(),
                  [](double s) { return s == 0.0; }))
    fail(ErrorCode::ZeroDensity, "density samples are all zero");
  if (std::all_of(samples.begin(), samples.end(),
                  [&](double s) { return s == samples.front(); }))
    return rect_state(grid, center, halfwidth);

  double half = 0.5 * grid->spacing;
  std::vector<double> weights(grid->nodes.size(), 0.0);
  for (size_t i = 0; i < weights.size(); ++i) {
    double d = grid->topology == Topology::Circle
                   ? wrap_to_pi(grid->nodes[i] - center)
                   : grid->nodes[i] - center;
    for (double shift : {0.0, -2.0 * kPi, 2.0 * kPi}) {
      double a = std::max(d - half + shift, -halfwidth);
      double b = std::min(d + half + shift, halfwidth);
      if (b > a) weights[i] += hat_integral(samples, halfwidth, a, b);
      if (grid->topology == Topology::Line) break;
    }
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) fail(ErrorCode::ZeroDensity, "density integrates to zero");
  for (double& w : weights) w /= total;
  return StateMeasure{grid, std::move(weights)};
}

StateMeasure translate_state(const StateMeasure& s, double shift) {
  const Grid& grid = *s.grid;
  if (grid.topology == Topology::QLattice) {
    if (std::abs(shift) > kCoordTol)
      fail(ErrorCode::NonLatticeShift, "lattice states only allow zero shift");
    return s;
  }
  double steps = shift / grid.spacing;
  auto k = static_cast<long long>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(k)) > 1e-9)
    fail(ErrorCode::NonLatticeShift,
         "shift is not an integer multiple of the spacing");

  int n = grid.size();
  std::vector<double> weights(static_cast<size_t>(n), 0.0);
  if (grid.topology == Topology::Circle) {
    long long m = ((k % n) + n) % n;
    for (int i = 0; i < n; ++i)
      weights[static_cast<size_t>((i + m) % n)] = s.weights[i];
  } else {
    for (int i = 0; i < n; ++i) {
      if (s.weights[i] == 0.0) continue;
      long long j = i + k;
      if (j < 0 || j >= n)
        fail(ErrorCode::ShiftLeavesWindow, "shift pushes mass past the window");
      weights[static_cast<size_t>(j)] = s.weights[i];
    }
  }
  return StateMeasure{s.grid, std::move(weights)};
}

}  // namespace ccrm
