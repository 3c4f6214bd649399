#include "ccrm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccrm/error.hpp"

namespace ccrm {

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

ConstraintGraph ConstraintGraph::build(int node_count, std::vector<Edge> edges) {
  if (node_count < 1)
    fail(ErrorCode::InvalidArgument, "graph needs at least one node");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count)
      fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.u == e.v) fail(ErrorCode::InvalidArgument, "self-loop edge");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      fail(ErrorCode::InvalidArgument, "edge length must be positive finite");
  }
  std::vector<std::pair<int, int>> keys;
  keys.reserve(edges.size());
  for (const Edge& e : edges)
    keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    fail(ErrorCode::InvalidArgument, "duplicate edge");

  ConstraintGraph g;
  g.node_count_ = node_count;
  g.edges_ = std::move(edges);

  std::vector<int> parent(static_cast<size_t>(node_count));
  for (int i = 0; i < node_count; ++i) parent[static_cast<size_t>(i)] = i;
  for (const Edge& e : g.edges_) {
    int ru = find_root(parent, e.u);
    int rv = find_root(parent, e.v);
    if (ru != rv) parent[static_cast<size_t>(std::max(ru, rv))] = std::min(ru, rv);
  }
  g.component_.assign(static_cast<size_t>(node_count), -1);
  for (int i = 0; i < node_count; ++i) {
    int r = find_root(parent, i);
    if (g.component_[static_cast<size_t>(r)] < 0)
      g.component_[static_cast<size_t>(r)] = g.component_count_++;
    g.component_[static_cast<size_t>(i)] = g.component_[static_cast<size_t>(r)];
  }

  std::vector<int> degree(static_cast<size_t>(node_count), 0);
  for (const Edge& e : g.edges_) {
    ++degree[static_cast<size_t>(e.u)];
    ++degree[static_cast<size_t>(e.v)];
  }
  g.adj_offset_.assign(static_cast<size_t>(node_count) + 1, 0);
  for (int i = 0; i < node_count; ++i)
    g.adj_offset_[static_cast<size_t>(i) + 1] =
        g.adj_offset_[static_cast<size_t>(i)] + degree[static_cast<size_t>(i)];
  g.adj_.resize(static_cast<size_t>(g.adj_offset_.back()));
  std::vector<int> cursor(g.adj_offset_.begin(), g.adj_offset_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adj_[static_cast<size_t>(cursor[static_cast<size_t>(e.u)]++)] = {e.v, e.length};
    g.adj_[static_cast<size_t>(cursor[static_cast<size_t>(e.v)]++)] = {e.u, e.length};
  }
  return g;
}

std::span<const std::pair<int, double>> ConstraintGraph::neighbors(int u) const {
  auto lo = static_cast<size_t>(adj_offset_[static_cast<size_t>(u)]);
  auto hi = static_cast<size_t>(adj_offset_[static_cast<size_t>(u) + 1]);
  return {adj_.data() + lo, hi - lo};
}

namespace {

ConstraintGraph compile_standard(const Grid& grid) {
  if (grid.topology == Topology::QLattice)
    fail(ErrorCode::IncompatibleGridOperator,
         "the derivative operator needs a uniform grid");
  int n = grid.size();
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n));
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, grid.spacing});
  if (grid.topology == Topology::Circle)
    edges.push_back({n - 1, 0, grid.spacing});
  return ConstraintGraph::build(n, std::move(edges));
}

ConstraintGraph compile_nonflat(const NonFlatOp& op, const Grid& grid) {
  if (grid.topology != Topology::Line)
    fail(ErrorCode::IncompatibleGridOperator,
         "the deformed derivative is defined on line grids");
  if (!op.g_of_x.strictly_positive())
    fail(ErrorCode::NonPositiveG, "G samples must be strictly positive");
  if (op.g_of_x.lo() > grid.window_lo + kCoordTol ||
      op.g_of_x.hi() < grid.window_hi - kCoordTol)
    fail(ErrorCode::IncompatibleGridOperator,
         "G samples do not cover the grid window");
  int n = grid.size();
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n));
  for (int i = 0; i + 1 < n; ++i) {
    double len =
        integrate_reciprocal(op.g_of_x, grid.nodes[static_cast<size_t>(i)],
                             grid.nodes[static_cast<size_t>(i) + 1]);
    edges.push_back({i, i + 1, len});
  }
  return ConstraintGraph::build(n, std::move(edges));
}

ConstraintGraph compile_hderiv(const HDerivOp& op, const Grid& grid) {
  if (!(op.h > 0.0))
    fail(ErrorCode::InvalidArgument, "step h must be positive");
  if (grid.topology != Topology::Line)
    fail(ErrorCode::IncompatibleGridOperator,
         "the finite difference operator is defined on line grids");
  double ratio = op.h / grid.spacing;
  int steps = static_cast<int>(std::lround(ratio));
  if (steps < 1 || std::abs(ratio - steps) > 1e-9)
    fail(ErrorCode::IncompatibleGridOperator,
         "step h is not a multiple of the grid spacing");
  int n = grid.size();
  std::vector<Edge> edges;
  for (int i = 0; i + steps < n; ++i) edges.push_back({i, i + steps, op.h});
  return ConstraintGraph::build(n, std::move(edges));
}

ConstraintGraph compile_qderiv(const QDerivOp& op, const Grid& grid) {
  if (!(op.q > 0.0) || !(op.q < 1.0))
    fail(ErrorCode::BadRatio, "ratio q must lie in (0, 1)");
  if (grid.topology != Topology::QLattice)
    fail(ErrorCode::IncompatibleGridOperator,
         "the scale difference operator needs a q-lattice grid");
  if (std::abs(op.q - grid.ratio) > 1e-9)
    fail(ErrorCode::IncompatibleGridOperator,
         "operator ratio disagrees with the lattice ratio");

  double rootq = std::sqrt(op.q);
  int zero = nearest_node(grid, 0.0);
  std::vector<Edge> edges;
  auto add_ladder = [&](double sign) {
    for (int k = 0; k < grid.depth; ++k) {
      double outer = grid.anchor * std::pow(grid.ratio, k);
      int u = nearest_node(grid, sign * outer);
      int v = nearest_node(grid, sign * outer * grid.ratio);
      edges.push_back({u, v, rootq * (1.0 - op.q) * outer});
    }
    double innermost = grid.anchor * std::pow(grid.ratio, grid.depth);
    int u = nearest_node(grid, sign * innermost);
    edges.push_back({u, zero, rootq * innermost});
  };
  add_ladder(1.0);
  if (grid.signs == QSigns::Both) add_ladder(-1.0);
  return ConstraintGraph::build(grid.size(), std::move(edges));
}

}  // namespace

ConstraintGraph compile(const OperatorSpec& spec, const Grid& grid) {
  return std::visit(
      [&](const auto& op) -> ConstraintGraph {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, StandardOp>) {
          return compile_standard(grid);
        } else if constexpr (std::is_same_v<T, NonFlatOp>) {
          return compile_nonflat(op, grid);
        } else if constexpr (std::is_same_v<T, HDerivOp>) {
          return compile_hderiv(op, grid);
        } else if constexpr (std::is_same_v<T, QDerivOp>) {
          return compile_qderiv(op, grid);
        } else {
          fail(ErrorCode::NotCompilable,
               "the rank-one projector has no pairwise-bound form");
        }
      },
      spec);
}

double seminorm(const OperatorSpec& spec, const Grid& grid,
                std::span<const double> f) {
  if (static_cast<int>(f.size()) != grid.size())
    fail(ErrorCode::SampleLengthMismatch, "need one sample per grid node");

  if (const auto* rank1 = std::get_if<RankOneProjectorOp>(&spec)) {
    if (grid.topology == Topology::QLattice)
      fail(ErrorCode::IncompatibleGridOperator,
           "the projector inner product needs a uniform grid");
    if (static_cast<int>(rank1->psi0.size()) != grid.size())
      fail(ErrorCode::SampleLengthMismatch, "need one psi0 sample per node");
    double dx = grid.spacing;
    double norm2 = 0.0, mean = 0.0, second = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
      double p2 = rank1->psi0[i] * rank1->psi0[i] * dx;
      norm2 += p2;
      mean += f[i] * p2;
      second += f[i] * f[i] * p2;
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
      fail(ErrorCode::InvalidArgument, "psi0 must be a unit vector");
    return std::sqrt(std::max(0.0, second - mean * mean));
  }

  ConstraintGraph g = compile(spec, grid);
  double worst = 0.0;
  for (const Edge& e : g.edges()) {
    double slope = std::abs(f[static_cast<size_t>(e.u)] -
                            f[static_cast<size_t>(e.v)]) /
                   e.length;
    worst = std::max(worst, slope);
  }
  return worst;
}

double HPeriodicWitness::operator()(double t) const {
  double envelope =
      n * std::exp(-std::sqrt(1.0 + (t - x) * (t - x)) / n);
  double s = std::sin(std::numbers::pi * (x - t) / h);
  return envelope * s * s;
}

std::vector<double> HPeriodicWitness::sample(const Grid& grid) const {
  std::vector<double> out;
  out.reserve(grid.nodes.size());
  for (double t : grid.nodes) out.push_back((*this)(t));
  return out;
}

HPeriodicWitness witness_hperiodic(int n, double x, double h) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "h must be positive");
  return HPeriodicWitness{n, x, h};
}

}  // namespace ccrm
