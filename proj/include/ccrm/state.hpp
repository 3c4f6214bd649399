#pragma once

#include <vector>

#include "ccrm/grid.hpp"

namespace ccrm {

/// Tolerance on the total mass of a normalized state.
inline constexpr double kMassSumTol = 1e-12;

/// Probability measure on the nodes of a grid.
struct StateMeasure {
  GridPtr grid;
  std::vector<double> weights;  // non-negative, sum 1 within kMassSumTol
};

/// Unit mass at the node nearest to x. The coordinate must resolve to a node
/// within half a cell (Line/Circle) or within kCoordTol (QLattice).
StateMeasure point_state(const GridPtr& grid, double x);

/// Uniform distribution on [center - halfwidth, center + halfwidth],
/// discretized by intersecting the support with each node's cell
/// [node - spacing/2, node + spacing/2] and normalizing the overlap lengths.
/// Line and Circle grids only.
StateMeasure rect_state(const GridPtr& grid, double center, double halfwidth);

/// General non-negative density on [-halfwidth, halfwidth], given as uniform
/// samples over that interval (at least 2). Cell weights are exact integrals
/// of the piecewise-linear interpolant, normalized. Constant samples reduce
/// to rect_state exactly.
StateMeasure density_state(const GridPtr& grid, double center, double halfwidth,
                           const std::vector<double>& samples);

/// Shifts a state by an integer multiple of the grid spacing: cyclically on
/// the circle, within the window on the line (any mass pushed past the
/// window is an error). Only the zero shift is valid on a QLattice.
StateMeasure translate_state(const StateMeasure& s, double shift);

}  // namespace ccrm
