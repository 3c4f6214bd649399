#include "ccrm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccrm/error.hpp"

namespace ccrm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

GridPtr build_line_grid(double lo, double hi, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    fail(ErrorCode::NonPositiveSpacing, "spacing must be positive");
  if (!(hi > lo))
    fail(ErrorCode::InvalidArgument, "window must be non-degenerate");

  double steps = (hi - lo) / spacing;
  auto count = static_cast<long long>(std::llround(steps));
  if (count < 1 || std::abs(steps - static_cast<double>(count)) > 1e-9)
    fail(ErrorCode::NonCommensurateWindow,
         "window length is not an integer multiple of the spacing");

  auto grid = std::make_shared<Grid>();
  grid->topology = Topology::Line;
  grid->spacing = spacing;
  grid->window_lo = lo;
  grid->window_hi = hi;
  grid->nodes.reserve(static_cast<size_t>(count) + 1);
  for (long long i = 0; i < count; ++i)
    grid->nodes.push_back(lo + static_cast<double>(i) * spacing);
  grid->nodes.push_back(hi);
  return grid;
}

GridPtr build_circle_grid(int n) {
  if (n < 3) fail(ErrorCode::TooFewNodes, "circle grid needs at least 3 nodes");

  auto grid = std::make_shared<Grid>();
  grid->topology = Topology::Circle;
  grid->spacing = kTwoPi / n;
  grid->nodes.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    grid->nodes.push_back(kTwoPi * static_cast<double>(k) / n);
  return grid;
}

GridPtr build_q_grid(double anchor, double q, int depth, QSigns signs) {
  if (!(q > 0.0) || !(q < 1.0))
    fail(ErrorCode::BadRatio, "ratio q must lie in (0, 1)");
  if (!(anchor > 0.0))
    fail(ErrorCode::InvalidArgument, "anchor must be positive");
  if (depth < 1) fail(ErrorCode::InvalidArgument, "depth must be at least 1");

  auto grid = std::make_shared<Grid>();
  grid->topology = Topology::QLattice;
  grid->anchor = anchor;
  grid->ratio = q;
  grid->depth = depth;
  grid->signs = signs;

  std::vector<double>& nodes = grid->nodes;
  nodes.push_back(0.0);
  for (int k = 0; k <= depth; ++k)
    nodes.push_back(anchor * std::pow(q, k));
  if (signs == QSigns::Both) {
    for (int k = 0; k <= depth; ++k)
      nodes.push_back(-anchor * std::pow(q, k));
  }
  std::sort(nodes.begin(), nodes.end());
  return grid;
}

int nearest_node(const Grid& grid, double x) {
  switch (grid.topology) {
    case Topology::Line: {
      if (x < grid.window_lo - kCoordTol || x > grid.window_hi + kCoordTol)
        fail(ErrorCode::OutsideWindow, "coordinate outside the grid window");
      double t = (x - grid.window_lo) / grid.spacing;
      int k = static_cast<int>(std::lround(std::floor(t)));
      k = std::clamp(k, 0, grid.size() - 1);
      // candidates k and k+1 straddle x; midpoint ties go to the lower index
      if (k + 1 < grid.size() &&
          x - grid.nodes[k] > grid.nodes[k + 1] - x)
        ++k;
      return k;
    }
    case Topology::Circle: {
      double r = reduce_angle(x);
      int n = grid.size();
      int k = static_cast<int>(std::lround(std::floor(r / grid.spacing)));
      k = std::clamp(k, 0, n - 1);
      double up = (k + 1 < n) ? grid.nodes[k + 1] : 2.0 * std::numbers::pi;
      if (r - grid.nodes[k] > up - r) k = (k + 1) % n;
      return k;
    }
    case Topology::QLattice: {
      auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(), x);
      int k = static_cast<int>(it - grid.nodes.begin());
      k = std::clamp(k, 0, grid.size() - 1);
      if (k > 0 && x - grid.nodes[k - 1] <= grid.nodes[k] - x) --k;
      return k;
    }
  }
  fail(ErrorCode::Internal, "unhandled topology");
}

}  // namespace ccrm
