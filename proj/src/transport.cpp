#include "ccrm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ccrm/error.hpp"

namespace ccrm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_grid(const StateMeasure& mu, const StateMeasure& nu) {
  bool same = mu.grid == nu.grid ||
              (mu.grid && nu.grid && mu.grid->topology == nu.grid->topology &&
               mu.grid->nodes == nu.grid->nodes);
  if (!same) fail(ErrorCode::GridMismatch, "states live on different grids");
  if (mu.weights.size() != nu.weights.size())
    fail(ErrorCode::GridMismatch, "states have different node counts");
}

std::vector<double> dijkstra(const ConstraintGraph& g, int source) {
  std::vector<double> dist(static_cast<size_t>(g.node_count()), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<size_t>(source)] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[static_cast<size_t>(u)]) continue;
    for (auto [v, len] : g.neighbors(u)) {
      double nd = d + len;
      if (nd < dist[static_cast<size_t>(v)]) {
        dist[static_cast<size_t>(v)] = nd;
        queue.push({nd, v});
      }
    }
  }
  return dist;
}

// Exact bipartite transshipment by successive shortest paths with node
// potentials. Supplies and demands are real masses; elements are snapped to
// exactly zero once they fall below a relative dust threshold so saturation
// arguments stay valid in floating point.
struct FlowSolution {
  std::vector<std::vector<double>> flow;  // [source][sink]
  std::vector<double> pot_source;
  std::vector<double> pot_sink;
  double cost = 0.0;
};

FlowSolution solve_transport(const std::vector<double>& supply,
                             const std::vector<double>& demand,
                             const std::vector<std::vector<double>>& cost) {
  int ns = static_cast<int>(supply.size());
  int nt = static_cast<int>(demand.size());
  double scale = 0.0;
  for (double a : supply) scale = std::max(scale, a);
  for (double b : demand) scale = std::max(scale, b);
  const double dust = 1e-15 * scale;

  FlowSolution sol;
  sol.flow.assign(static_cast<size_t>(ns),
                  std::vector<double>(static_cast<size_t>(nt), 0.0));
  sol.pot_source.assign(static_cast<size_t>(ns), 0.0);
  sol.pot_sink.assign(static_cast<size_t>(nt), 0.0);

  std::vector<double> rs = supply;
  std::vector<double> rt = demand;
  std::vector<char> stuck(static_cast<size_t>(ns), 0);

  int total = ns + nt;  // node ids: sources 0..ns-1, sinks ns..ns+nt-1
  std::vector<double> dist(static_cast<size_t>(total));
  std::vector<int> parent(static_cast<size_t>(total));
  long guard = 8L * total * total + 64;

  while (true) {
    int s0 = -1;
    for (int s = 0; s < ns; ++s) {
      if (rs[static_cast<size_t>(s)] > dust && !stuck[static_cast<size_t>(s)]) {
        s0 = s;
        break;
      }
    }
    if (s0 < 0) break;
    if (--guard < 0) fail(ErrorCode::Internal, "transport solver stalled");

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[static_cast<size_t>(s0)] = 0.0;
    queue.push({0.0, s0});
    int target = -1;
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[static_cast<size_t>(v)]) continue;
      if (v >= ns && rt[static_cast<size_t>(v - ns)] > dust) {
        target = v - ns;
        break;
      }
      if (v < ns) {
        const auto& row = cost[static_cast<size_t>(v)];
        for (int t = 0; t < nt; ++t) {
          double c = row[static_cast<size_t>(t)];
          if (!(c < kInf)) continue;
          double rc = std::max(0.0, c + sol.pot_source[static_cast<size_t>(v)] -
                                        sol.pot_sink[static_cast<size_t>(t)]);
          double nd = d + rc;
          if (nd < dist[static_cast<size_t>(ns + t)]) {
            dist[static_cast<size_t>(ns + t)] = nd;
            parent[static_cast<size_t>(ns + t)] = v;
            queue.push({nd, ns + t});
          }
        }
      } else {
        int t = v - ns;
        for (int s = 0; s < ns; ++s) {
          if (sol.flow[static_cast<size_t>(s)][static_cast<size_t>(t)] <= 0.0)
            continue;
          double rc = std::max(
              0.0, -cost[static_cast<size_t>(s)][static_cast<size_t>(t)] +
                       sol.pot_sink[static_cast<size_t>(t)] -
                       sol.pot_source[static_cast<size_t>(s)]);
          double nd = d + rc;
          if (nd < dist[static_cast<size_t>(s)]) {
            dist[static_cast<size_t>(s)] = nd;
            parent[static_cast<size_t>(s)] = v;
            queue.push({nd, s});
          }
        }
      }
    }
    if (target < 0) {
      stuck[static_cast<size_t>(s0)] = 1;
      continue;
    }

    // unreached nodes take the full bump so no reduced cost can turn negative
    double reach = dist[static_cast<size_t>(ns + target)];
    for (int v = 0; v < total; ++v) {
      double bump = std::min(dist[static_cast<size_t>(v)], reach);
      if (v < ns)
        sol.pot_source[static_cast<size_t>(v)] += bump;
      else
        sol.pot_sink[static_cast<size_t>(v - ns)] += bump;
    }

    double bottleneck = std::min(rs[static_cast<size_t>(s0)],
                                 rt[static_cast<size_t>(target)]);
    for (int v = ns + target; parent[static_cast<size_t>(v)] >= 0;
         v = parent[static_cast<size_t>(v)]) {
      if (v < ns) {
        int t = parent[static_cast<size_t>(v)] - ns;
        bottleneck = std::min(
            bottleneck, sol.flow[static_cast<size_t>(v)][static_cast<size_t>(t)]);
      }
    }
    for (int v = ns + target; parent[static_cast<size_t>(v)] >= 0;
         v = parent[static_cast<size_t>(v)]) {
      int p = parent[static_cast<size_t>(v)];
      if (v >= ns) {
        sol.flow[static_cast<size_t>(p)][static_cast<size_t>(v - ns)] +=
            bottleneck;
      } else {
        double& x = sol.flow[static_cast<size_t>(v)][static_cast<size_t>(p - ns)];
        x -= bottleneck;
        if (x <= dust) x = 0.0;
      }
    }
    double& srem = rs[static_cast<size_t>(s0)];
    double& trem = rt[static_cast<size_t>(target)];
    srem -= bottleneck;
    trem -= bottleneck;
    if (srem <= dust) srem = 0.0;
    if (trem <= dust) trem = 0.0;
  }

  for (int s = 0; s < ns; ++s)
    for (int t = 0; t < nt; ++t) {
      double x = sol.flow[static_cast<size_t>(s)][static_cast<size_t>(t)];
      if (x > 0.0) sol.cost += x * cost[static_cast<size_t>(s)][static_cast<size_t>(t)];
    }
  return sol;
}

}  // namespace

std::vector<std::vector<double>> graph_metric(const ConstraintGraph& g,
                                              const std::vector<int>& sources) {
  std::vector<std::vector<double>> rows;
  rows.reserve(sources.size());
  for (int s : sources) {
    if (s < 0 || s >= g.node_count())
      fail(ErrorCode::InvalidArgument, "source node out of range");
    rows.push_back(dijkstra(g, s));
  }
  return rows;
}

DistanceResult spectral_distance(const ConstraintGraph& g,
                                 const StateMeasure& mu,
                                 const StateMeasure& nu) {
  check_same_grid(mu, nu);
  int n = g.node_count();
  if (static_cast<int>(mu.weights.size()) != n)
    fail(ErrorCode::GridMismatch, "states do not match the graph");

  std::vector<double> delta(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    delta[static_cast<size_t>(i)] = mu.weights[static_cast<size_t>(i)] -
                                    nu.weights[static_cast<size_t>(i)];

  DistanceResult out;
  out.component_imbalance.assign(static_cast<size_t>(g.component_count()), 0.0);
  for (int i = 0; i < n; ++i)
    out.component_imbalance[static_cast<size_t>(g.component(i))] +=
        delta[static_cast<size_t>(i)];
  for (double m : out.component_imbalance) {
    if (std::abs(m) > kImbalanceTol) {
      out.infinite = true;
      return out;
    }
  }

  int first = -1;
  for (int i = 0; i < n && first < 0; ++i)
    if (delta[static_cast<size_t>(i)] != 0.0) first = i;
  if (first < 0) {
    out.witness.assign(static_cast<size_t>(n), 0.0);
    return out;
  }

  // canonical orientation makes the value exactly symmetric in (mu, nu)
  bool flipped = delta[static_cast<size_t>(first)] < 0.0;
  if (flipped)
    for (double& d : delta) d = -d;

  std::vector<int> sources, sinks;
  for (int i = 0; i < n; ++i) {
    if (delta[static_cast<size_t>(i)] > 0.0) sources.push_back(i);
    else if (delta[static_cast<size_t>(i)] < 0.0) sinks.push_back(i);
  }

  // ground distances radiate from the smaller side; the witness is anchored
  // on that same side
  bool anchor_sinks = sinks.size() <= sources.size();
  const std::vector<int>& anchors = anchor_sinks ? sinks : sources;
  std::vector<std::vector<double>> rows = graph_metric(g, anchors);

  std::vector<double> supply, demand;
  supply.reserve(sources.size());
  demand.reserve(sinks.size());
  for (int s : sources) supply.push_back(delta[static_cast<size_t>(s)]);
  for (int t : sinks) demand.push_back(-delta[static_cast<size_t>(t)]);

  std::vector<std::vector<double>> cost(
      sources.size(), std::vector<double>(sinks.size(), kInf));
  for (size_t a = 0; a < anchors.size(); ++a) {
    if (anchor_sinks) {
      for (size_t si = 0; si < sources.size(); ++si)
        cost[si][a] = rows[a][static_cast<size_t>(sources[si])];
    } else {
      for (size_t tj = 0; tj < sinks.size(); ++tj)
        cost[a][tj] = rows[a][static_cast<size_t>(sinks[tj])];
    }
  }

  FlowSolution sol = solve_transport(supply, demand, cost);
  out.value = sol.cost;

  // Kantorovich potential on the anchor side is minus the solver potential;
  // extend it 1-Lipschitz-tightly to every node of each populated component
  out.witness.assign(static_cast<size_t>(n), 0.0);
  for (int x = 0; x < n; ++x) {
    int comp = g.component(x);
    bool found = false;
    double best = 0.0;
    for (size_t a = 0; a < anchors.size(); ++a) {
      if (g.component(anchors[a]) != comp) continue;
      double fa = anchor_sinks ? -sol.pot_sink[a] : -sol.pot_source[a];
      double cand = anchor_sinks ? fa + rows[a][static_cast<size_t>(x)]
                                 : fa - rows[a][static_cast<size_t>(x)];
      if (!found || (anchor_sinks ? cand < best : cand > best)) best = cand;
      found = true;
    }
    out.witness[static_cast<size_t>(x)] = best;
  }
  if (flipped)
    for (double& w : out.witness) w = -w;

  out.plan.reserve(sources.size() + sinks.size());
  for (size_t si = 0; si < sources.size(); ++si)
    for (size_t tj = 0; tj < sinks.size(); ++tj) {
      double mass = sol.flow[si][tj];
      if (mass <= 0.0) continue;
      if (flipped)
        out.plan.push_back({sinks[tj], sources[si], mass});
      else
        out.plan.push_back({sources[si], sinks[tj], mass});
    }
  std::sort(out.plan.begin(), out.plan.end(),
            [](const PlanEntry& a, const PlanEntry& b) {
              return a.source != b.source ? a.source < b.source
                                          : a.target < b.target;
            });

  // defense in depth: the witness must certify the computed value
  for (const Edge& e : g.edges()) {
    double gap = std::abs(out.witness[static_cast<size_t>(e.u)] -
                          out.witness[static_cast<size_t>(e.v)]);
    if (gap > e.length * (1.0 + 1e-9) + 1e-12)
      fail(ErrorCode::Internal, "witness violates a pairwise bound");
  }
  double objective = 0.0;
  for (int i = 0; i < n; ++i)
    objective += (mu.weights[static_cast<size_t>(i)] -
                  nu.weights[static_cast<size_t>(i)]) *
                 out.witness[static_cast<size_t>(i)];
  if (std::abs(objective - out.value) > 1e-9 * std::max(1.0, out.value))
    fail(ErrorCode::Internal, "witness objective misses the plan cost");
  return out;
}

double line_w1_cdf(const std::vector<double>& edge_lengths,
                   const StateMeasure& mu, const StateMeasure& nu) {
  check_same_grid(mu, nu);
  size_t n = mu.weights.size();
  if (edge_lengths.size() + 1 != n)
    fail(ErrorCode::NotAPathGraph, "edge count must be node count minus one");
  for (double len : edge_lengths)
    if (!(len > 0.0) || !std::isfinite(len))
      fail(ErrorCode::NotAPathGraph, "path edge lengths must be positive");
  double cdf = 0.0;
  double total = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    cdf += mu.weights[i] - nu.weights[i];
    total += edge_lengths[i] * std::abs(cdf);
  }
  return total;
}

std::vector<double> path_edge_lengths(const ConstraintGraph& g) {
  int n = g.node_count();
  if (static_cast<int>(g.edges().size()) != n - 1)
    fail(ErrorCode::NotAPathGraph, "graph is not a simple path");
  std::vector<double> lengths(static_cast<size_t>(n - 1), 0.0);
  for (const Edge& e : g.edges()) {
    int lo = std::min(e.u, e.v);
    int hi = std::max(e.u, e.v);
    if (hi != lo + 1) fail(ErrorCode::NotAPathGraph, "graph is not a simple path");
    lengths[static_cast<size_t>(lo)] = e.length;
  }
  return lengths;
}

CircleCutResult circle_w1_cut(const Grid& grid, const StateMeasure& mu,
                              const StateMeasure& nu) {
  if (grid.topology != Topology::Circle)
    fail(ErrorCode::NotCircle, "cut solver needs a circle grid");
  check_same_grid(mu, nu);
  int n = grid.size();
  if (static_cast<int>(mu.weights.size()) != n)
    fail(ErrorCode::GridMismatch, "states do not match the grid");

  std::vector<double> diff(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    diff[static_cast<size_t>(i)] = mu.weights[static_cast<size_t>(i)] -
                                   nu.weights[static_cast<size_t>(i)];

  CircleCutResult best{kInf, 0};
  for (int k = 0; k < n; ++k) {
    double cdf = 0.0;
    double sum = 0.0;
    for (int m = 0; m + 1 < n; ++m) {
      cdf += diff[static_cast<size_t>((k + m) % n)];
      sum += std::abs(cdf);
    }
    double value = grid.spacing * sum;
    if (value < best.value) best = {value, k};
  }
  return best;
}

double brute_force_w1(const std::vector<std::vector<double>>& cost,
                      const StateMeasure& mu, const StateMeasure& nu,
                      int quanta) {
  if (quanta < 1 || quanta > 8)
    fail(ErrorCode::TooLarge, "quanta must be between 1 and 8");
  check_same_grid(mu, nu);
  size_t n = mu.weights.size();
  if (cost.size() != n)
    fail(ErrorCode::InvalidArgument, "cost matrix does not match the states");
  for (const auto& row : cost)
    if (row.size() != n)
      fail(ErrorCode::InvalidArgument, "cost matrix must be square");

  auto atoms = [&](const StateMeasure& s) {
    std::vector<int> list;
    for (size_t i = 0; i < n; ++i) {
      double scaled = s.weights[i] * quanta;
      auto m = static_cast<long long>(std::llround(scaled));
      if (std::abs(scaled - static_cast<double>(m)) > 1e-9 * quanta)
        fail(ErrorCode::NotQuantized,
             "weights are not integer multiples of 1/quanta");
      for (long long r = 0; r < m; ++r) list.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(list.size()) != quanta)
      fail(ErrorCode::NotQuantized, "masses do not total the quanta count");
    return list;
  };
  std::vector<int> from = atoms(mu);
  std::vector<int> to = atoms(nu);

  double best = kInf;
  do {
    double total = 0.0;
    for (int i = 0; i < quanta; ++i)
      total += cost[static_cast<size_t>(from[static_cast<size_t>(i)])]
                   [static_cast<size_t>(to[static_cast<size_t>(i)])];
    best = std::min(best, total);
  } while (std::next_permutation(to.begin(), to.end()));
  return best / quanta;
}

}  // namespace ccrm
