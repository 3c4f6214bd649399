#pragma once

#include <memory>
#include <vector>

namespace ccrm {

/// Absolute tolerance for matching a free coordinate against a grid node.
inline constexpr double kCoordTol = 1e-9;

enum class Topology {
  Line,     // uniform nodes on a closed interval [lo, hi]
  Circle,   // N uniform angles on [0, 2*pi), arc-length geometry
  QLattice, // {0} and a geometric ladder a*q^k, optionally mirrored
};

enum class QSigns { PositiveOnly, Both };

/// Discretization of the configuration space. Immutable after construction;
/// shared by states and compiled operators so that mismatched pairings can be
/// rejected by pointer identity.
struct Grid {
  Topology topology = Topology::Line;
  std::vector<double> nodes;  // strictly increasing coordinates

  // Line and Circle
  double spacing = 0.0;    // node step (arc step 2*pi/N on the circle)
  double window_lo = 0.0;  // Line only
  double window_hi = 0.0;  // Line only

  // QLattice
  double anchor = 0.0;  // outermost positive node a
  double ratio = 0.0;   // q in (0, 1)
  int depth = 0;        // innermost positive node is a*q^depth
  QSigns signs = QSigns::PositiveOnly;

  int size() const { return static_cast<int>(nodes.size()); }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Uniform grid on [lo, hi] with the given spacing. The window length must be
/// an integer multiple of the spacing to within 1e-9 relative tolerance.
GridPtr build_line_grid(double lo, double hi, double spacing);

/// n uniformly spaced angles 2*pi*k/n, k = 0..n-1. Requires n >= 3.
GridPtr build_circle_grid(int n);

/// Geometric lattice {anchor * q^k : k = 0..depth} plus the accumulation
/// point 0, mirrored to negative coordinates when signs == Both. Nodes are
/// returned in increasing order. The lattice is a finite truncation of the
/// infinite ladder; operator compilation accounts for the omitted tail.
GridPtr build_q_grid(double anchor, double q, int depth, QSigns signs);

/// Index of the node nearest to x. On the circle x is reduced mod 2*pi first.
/// On the line x must lie inside [lo, hi] up to kCoordTol (OutsideWindow
/// otherwise). Exact midpoint ties resolve to the lower index.
int nearest_node(const Grid& grid, double x);

/// x reduced to [0, 2*pi).
double reduce_angle(double x);

}  // namespace ccrm
