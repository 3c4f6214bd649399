#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ccrm/grid.hpp"
#include "ccrm/sampled_function.hpp"

namespace ccrm {

/// Momentum operator p = -i d/dx, giving the flat commutator [x, p] = i.
struct StandardOp {};

/// Deformed commutator [x, p] = iG(x) with G sampled and strictly positive.
/// The induced metric is g = G^-2, so the constraint is |f'| <= 1/G.
struct NonFlatOp {
  SampledFunction g_of_x;
};

/// Finite difference D_h f(x) = (f(x+h) - f(x)) / h. The commutator norm
/// reduces to sup |f(x+h) - f(x)| / h, so only pairs exactly h apart are
/// constrained.
struct HDerivOp {
  double h = 0.0;
};

/// Scale difference D_q f(x) = (f(x) - f(qx)) / ((1-q) x). The commutator
/// norm reduces to sup |f(x) - f(qx)| / (sqrt(q) (1-q) |x|).
struct QDerivOp {
  double q = 0.0;
};

/// Rank-one projector onto the sampled unit vector psi0. Its seminorm is the
/// standard deviation of f in the vector state psi0; it has no pairwise-bound
/// representation and cannot be compiled to a graph.
struct RankOneProjectorOp {
  std::vector<double> psi0;
};

using OperatorSpec =
    std::variant<StandardOp, NonFlatOp, HDerivOp, QDerivOp, RankOneProjectorOp>;

/// Undirected weighted edge encoding the bound |f(u) - f(v)| <= length.
struct Edge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/// The feasible set {f : seminorm(f) <= 1} of a compiled operator, as a graph
/// of pairwise bounds. Connected component labels are precomputed; nodes in
/// different components have no constraint linking them.
class ConstraintGraph {
 public:
  /// Validates edges (indices in range, no self-loops, no duplicates,
  /// positive finite lengths) and labels components.
  static ConstraintGraph build(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int component(int node) const { return component_[node]; }
  int component_count() const { return component_count_; }
  std::span<const std::pair<int, double>> neighbors(int u) const;

 private:
  ConstraintGraph() = default;

  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> component_;
  int component_count_ = 0;
  std::vector<int> adj_offset_;
  std::vector<std::pair<int, double>> adj_;
};

/// Compiles the operator's unit ball into a ConstraintGraph over the grid.
/// RankOneProjectorOp is rejected with NotCompilable; spec/grid mismatches
/// (wrong topology, h not on the lattice, q disagreeing with the grid) are
/// rejected with IncompatibleGridOperator.
ConstraintGraph compile(const OperatorSpec& spec, const Grid& grid);

/// Evaluates the commutator seminorm of a sampled function: the maximum
/// edge-normalized difference for compilable specs, the psi0-variance square
/// root for the rank-one projector.
double seminorm(const OperatorSpec& spec, const Grid& grid,
                std::span<const double> f);

/// The h-periodic decaying test function
///   f(t) = n * exp(-(1/n) * sqrt(1 + (t-x)^2)) * sin^2(pi (x-t) / h),
/// which vanishes on x + h Z and has seminorm at most 1 under HDerivOp(h).
struct HPeriodicWitness {
  int n = 1;
  double x = 0.0;
  double h = 1.0;

  double operator()(double t) const;
  std::vector<double> sample(const Grid& grid) const;
};

HPeriodicWitness witness_hperiodic(int n, double x, double h);

}  // namespace ccrm
