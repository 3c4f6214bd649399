#pragma once

#include <optional>
#include <vector>

#include "ccrm/operators.hpp"
#include "ccrm/state.hpp"

namespace ccrm {

/// A component whose net mass exceeds this makes the distance infinite: the
/// component's indicator scales freely under the seminorm.
inline constexpr double kImbalanceTol = 1e-10;

/// One movement of the optimal plan: `mass` units from node `source` (where
/// mu exceeds nu) to node `target` (where nu exceeds mu).
struct PlanEntry {
  int source = 0;
  int target = 0;
  double mass = 0.0;
};

struct DistanceResult {
  bool infinite = false;
  double value = 0.0;                       // meaningful iff !infinite
  std::vector<double> witness;              // per-node potential, empty if infinite
  std::vector<PlanEntry> plan;              // sorted by (source, target)
  std::vector<double> component_imbalance;  // net mass per component label
  std::optional<int> cut_node;              // filled by the circle cut solver
};

/// Shortest-path distances from each source node to every node, one row per
/// source. Unreachable nodes get +infinity.
std::vector<std::vector<double>> graph_metric(const ConstraintGraph& g,
                                              const std::vector<int>& sources);

/// The spectral distance sup { sum (mu - nu)_i f_i : f 1-Lipschitz on g },
/// solved exactly through its primal form as a minimum-cost transshipment
/// with the graph metric as ground cost. Infinite iff some component's net
/// mass imbalance exceeds kImbalanceTol. Finite results carry an optimal
/// witness potential and transport plan with zero duality gap.
DistanceResult spectral_distance(const ConstraintGraph& g,
                                 const StateMeasure& mu,
                                 const StateMeasure& nu);

/// Exact Wasserstein-1 on a path graph with the given consecutive edge
/// lengths: sum over edges of length * |CDF_mu - CDF_nu|.
double line_w1_cdf(const std::vector<double>& edge_lengths,
                   const StateMeasure& mu, const StateMeasure& nu);

/// Consecutive edge lengths of a graph that is a simple path 0-1-...-n-1,
/// NotAPathGraph otherwise. Bridges compile() output to line_w1_cdf.
std::vector<double> path_edge_lengths(const ConstraintGraph& g);

struct CircleCutResult {
  double value = 0.0;
  int cut_node = 0;
};

/// Exact Wasserstein-1 on a uniform circle grid: minimum over all cut nodes
/// of the line CDF value on the cut-open path. cut_node = k means the cycle
/// is opened by removing the edge between nodes k-1 and k; ties resolve to
/// the lowest k.
CircleCutResult circle_w1_cut(const Grid& grid, const StateMeasure& mu,
                              const StateMeasure& nu);

/// Exhaustive Wasserstein-1 oracle for states whose weights are integer
/// multiples of 1/quanta (quanta <= 8): minimum assignment cost over all
/// matchings of the mass quanta.
double brute_force_w1(const std::vector<std::vector<double>>& cost,
                      const StateMeasure& mu, const StateMeasure& nu,
                      int quanta);

}  // namespace ccrm
