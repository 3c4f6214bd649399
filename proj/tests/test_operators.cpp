#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>

#include "ccrm/error.hpp"
#include "ccrm/operators.hpp"

using namespace ccrm;

namespace {
constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

const Edge* find_edge(const ConstraintGraph& g, int u, int v) {
  for (const Edge& e : g.edges())
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return &e;
  return nullptr;
}
}  // namespace

TEST_CASE("constraint graph computes components and adjacency") {
  ConstraintGraph g = ConstraintGraph::build(5, {{0, 1, 1.0},
                                                 {1, 2, 0.5},
                                                 {3, 4, 2.0}});
  CHECK(g.node_count() == 5);
  CHECK(g.component_count() == 2);
  CHECK(g.component(0) == g.component(2));
  CHECK(g.component(3) == g.component(4));
  CHECK(g.component(0) != g.component(3));
  CHECK(g.neighbors(1).size() == 2);
  CHECK(g.neighbors(4).size() == 1);
}

TEST_CASE("constraint graph rejects malformed edges") {
  CHECK(code_of([] { ConstraintGraph::build(3, {{0, 3, 1.0}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { ConstraintGraph::build(3, {{1, 1, 1.0}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { ConstraintGraph::build(3, {{0, 1, 0.0}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { ConstraintGraph::build(3, {{0, 1, -2.0}}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { ConstraintGraph::build(3, {{0, 1, 1.0}, {1, 0, 1.0}}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("standard operator chains consecutive nodes") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.25);
  ConstraintGraph cg = compile(StandardOp{}, *g);
  CHECK(cg.node_count() == 5);
  CHECK(cg.edges().size() == 4);
  CHECK(cg.component_count() == 1);
  for (const Edge& e : cg.edges()) {
    CHECK(e.v == e.u + 1);
    CHECK(e.length == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("standard operator closes the circle") {
  GridPtr g = build_circle_grid(6);
  ConstraintGraph cg = compile(StandardOp{}, *g);
  CHECK(cg.edges().size() == 6);
  CHECK(cg.component_count() == 1);
  const Edge* seam = find_edge(cg, 5, 0);
  REQUIRE(seam != nullptr);
  CHECK(seam->length == doctest::Approx(2 * kPi / 6).epsilon(1e-15));
}

TEST_CASE("standard operator refuses the q lattice") {
  GridPtr g = build_q_grid(1.0, 0.5, 3, QSigns::Both);
  CHECK(code_of([&] { compile(StandardOp{}, *g); }) ==
        ErrorCode::IncompatibleGridOperator);
}

TEST_CASE("variable commutator with unit profile matches the standard one") {
  GridPtr g = build_line_grid(0.0, 2.0, 0.125);
  SampledFunction one = constant_sampled(0.0, 2.0, 1.0);
  ConstraintGraph flat = compile(NonFlatOp{one}, *g);
  ConstraintGraph std_graph = compile(StandardOp{}, *g);
  REQUIRE(flat.edges().size() == std_graph.edges().size());
  for (size_t i = 0; i < flat.edges().size(); ++i) {
    CHECK(flat.edges()[i].u == std_graph.edges()[i].u);
    CHECK(flat.edges()[i].v == std_graph.edges()[i].v);
    CHECK(flat.edges()[i].length ==
          doctest::Approx(std_graph.edges()[i].length).epsilon(1e-12));
  }
}

TEST_CASE("variable commutator integrates the reciprocal profile") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.5);
  std::vector<double> xs, ys;
  for (int i = 0; i <= 200; ++i) {
    double t = i / 200.0;
    xs.push_back(t);
    ys.push_back(1.0 + t * t);
  }
  ConstraintGraph cg = compile(NonFlatOp{make_sampled(xs, ys)}, *g);
  REQUIRE(cg.edges().size() == 2);

  // exact integral of the reciprocal of the piecewise linear interpolant
  auto exact_piece = [&](size_t lo, size_t hi) {
    double total = 0.0;
    for (size_t i = lo; i < hi; ++i) {
      double w = xs[i + 1] - xs[i];
      double ga = ys[i], gb = ys[i + 1];
      total += gb == ga ? w / ga : w / (gb - ga) * std::log(gb / ga);
    }
    return total;
  };
  CHECK(cg.edges()[0].length ==
        doctest::Approx(exact_piece(0, 100)).epsilon(1e-10));
  CHECK(cg.edges()[1].length ==
        doctest::Approx(exact_piece(100, 200)).epsilon(1e-10));
  CHECK(cg.edges()[0].length == doctest::Approx(std::atan(0.5)).epsilon(1e-4));
  CHECK(cg.edges()[1].length ==
        doctest::Approx(std::atan(1.0) - std::atan(0.5)).epsilon(1e-4));
}

TEST_CASE("variable commutator needs a positive profile covering the window") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.5);
  CHECK(code_of([&] {
          compile(NonFlatOp{make_sampled({0.0, 1.0}, {1.0, 0.0})}, *g);
        }) == ErrorCode::NonPositiveG);
  CHECK(code_of([&] {
          compile(NonFlatOp{make_sampled({0.2, 1.0}, {1.0, 1.0})}, *g);
        }) == ErrorCode::IncompatibleGridOperator);
  GridPtr circle = build_circle_grid(8);
  CHECK(code_of([&] {
          compile(NonFlatOp{constant_sampled(0.0, 7.0, 1.0)}, *circle);
        }) == ErrorCode::IncompatibleGridOperator);
}

TEST_CASE("step operator links nodes exactly one step apart") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.25);
  ConstraintGraph cg = compile(HDerivOp{0.5}, *g);
  REQUIRE(cg.edges().size() == 3);
  CHECK(find_edge(cg, 0, 2) != nullptr);
  CHECK(find_edge(cg, 1, 3) != nullptr);
  CHECK(find_edge(cg, 2, 4) != nullptr);
  for (const Edge& e : cg.edges())
    CHECK(e.length == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cg.component_count() == 2);
  CHECK(cg.component(0) == cg.component(2));
  CHECK(cg.component(0) == cg.component(4));
  CHECK(cg.component(1) == cg.component(3));
  CHECK(cg.component(0) != cg.component(1));
}

TEST_CASE("step operator demands a lattice-aligned step") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.25);
  CHECK(code_of([&] { compile(HDerivOp{0.3}, *g); }) ==
        ErrorCode::IncompatibleGridOperator);
  CHECK(code_of([&] { compile(HDerivOp{0.0}, *g); }) ==
        ErrorCode::InvalidArgument);
  GridPtr circle = build_circle_grid(8);
  CHECK(code_of([&] { compile(HDerivOp{2 * kPi / 8}, *circle); }) ==
        ErrorCode::IncompatibleGridOperator);
}

TEST_CASE("scale operator builds geometric ladders with hub closure") {
  GridPtr g = build_q_grid(1.0, 0.25, 2, QSigns::Both);
  ConstraintGraph cg = compile(QDerivOp{0.25}, *g);

  int zero = -1;
  for (int i = 0; i < g->size(); ++i)
    if (g->nodes[static_cast<size_t>(i)] == 0.0) zero = i;
  auto at = [&](double x) {
    for (int i = 0; i < g->size(); ++i)
      if (g->nodes[static_cast<size_t>(i)] == x) return i;
    return -1;
  };

  REQUIRE(cg.edges().size() == 6);
  const Edge* outer = find_edge(cg, at(1.0), at(0.25));
  REQUIRE(outer != nullptr);
  CHECK(outer->length == doctest::Approx(0.375).epsilon(1e-15));
  const Edge* inner = find_edge(cg, at(0.25), at(0.0625));
  REQUIRE(inner != nullptr);
  CHECK(inner->length == doctest::Approx(0.09375).epsilon(1e-15));
  const Edge* closure = find_edge(cg, at(0.0625), zero);
  REQUIRE(closure != nullptr);
  CHECK(closure->length == doctest::Approx(0.03125).epsilon(1e-15));
  const Edge* mirrored = find_edge(cg, at(-1.0), at(-0.25));
  REQUIRE(mirrored != nullptr);
  CHECK(mirrored->length == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(cg.component_count() == 1);
}

TEST_CASE("scale operator must match the lattice ratio") {
  GridPtr g = build_q_grid(1.0, 0.25, 4, QSigns::Both);
  CHECK(code_of([&] { compile(QDerivOp{0.5}, *g); }) ==
        ErrorCode::IncompatibleGridOperator);
  CHECK(code_of([&] { compile(QDerivOp{1.5}, *g); }) == ErrorCode::BadRatio);
  GridPtr line = build_line_grid(0.0, 1.0, 0.25);
  CHECK(code_of([&] { compile(QDerivOp{0.25}, *line); }) ==
        ErrorCode::IncompatibleGridOperator);
}

TEST_CASE("seminorm is the largest constrained difference quotient") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.25);
  std::vector<double> identity = {0.0, 0.25, 0.5, 0.75, 1.0};
  CHECK(seminorm(StandardOp{}, *g, identity) ==
        doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> constant(5, 3.7);
  CHECK(seminorm(StandardOp{}, *g, constant) == 0.0);
  std::vector<double> doubled = {0.0, 0.5, 1.0, 1.5, 2.0};
  CHECK(seminorm(StandardOp{}, *g, doubled) ==
        doctest::Approx(2.0).epsilon(1e-12));
  std::vector<double> kink = {0.0, 0.25, 0.2, 0.45, 0.7};
  CHECK(seminorm(StandardOp{}, *g, kink) ==
        doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> short_f = {0.0, 1.0};
  CHECK(code_of([&] { seminorm(StandardOp{}, *g, short_f); }) ==
        ErrorCode::SampleLengthMismatch);
}

TEST_CASE("seminorm under the step operator ignores off-step pairs") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.25);
  std::vector<double> f = {0.0, 100.0, 0.25, 100.5, 0.5};
  CHECK(seminorm(HDerivOp{0.5}, *g, f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projector seminorm is the spread under the profile weights") {
  GridPtr g = build_line_grid(0.0, 1.0, 0.5);
  double a = 1.0;  // two equal samples of 1/sqrt(2*spacing) squared weight 0.5
  RankOneProjectorOp op{{a, a, 0.0}};
  std::vector<double> f = {0.0, 1.0, 2.0};
  CHECK(seminorm(op, *g, f) == doctest::Approx(0.5).epsilon(1e-12));
  std::vector<double> flat_on_support = {2.0, 2.0, -5.0};
  CHECK(seminorm(op, *g, flat_on_support) == doctest::Approx(0.0).epsilon(1e-12));
  RankOneProjectorOp bad{{1.0, 1.0, 1.0}};
  CHECK(code_of([&] { seminorm(bad, *g, f); }) == ErrorCode::InvalidArgument);
  GridPtr q = build_q_grid(1.0, 0.5, 2, QSigns::PositiveOnly);
  RankOneProjectorOp onq{{0.0, 0.0, 1.0, 1.0}};
  std::vector<double> zeros(4, 0.0);
  CHECK(code_of([&] { seminorm(onq, *q, zeros); }) ==
        ErrorCode::IncompatibleGridOperator);
  CHECK(code_of([&] { compile(op, *g); }) == ErrorCode::NotCompilable);
}

TEST_CASE("seminorm scales homogeneously") {
  GridPtr g = build_line_grid(0.0, 2.0, 0.125);
  std::vector<double> f(static_cast<size_t>(g->size()));
  for (int i = 0; i < g->size(); ++i) {
    double x = g->nodes[static_cast<size_t>(i)];
    f[static_cast<size_t>(i)] = std::sin(3 * x) + 0.5 * x;
  }
  for (double lambda : {0.0, 0.25, 2.0, 13.0}) {
    std::vector<double> scaled = f;
    for (double& v : scaled) v *= lambda;
    CHECK(seminorm(HDerivOp{0.25}, *g, scaled) ==
          doctest::Approx(lambda * seminorm(HDerivOp{0.25}, *g, f))
              .epsilon(1e-12));
  }
}

TEST_CASE("periodic witness vanishes on the congruence class of its anchor") {
  HPeriodicWitness w = witness_hperiodic(2.0, 1.0, 0.5);
  CHECK(w(1.0) == 0.0);
  CHECK(w(1.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w(2.5) == doctest::Approx(0.0).epsilon(1e-12));
  double expected = 1.0 * std::exp(-std::sqrt(1.0 + 0.0625));
  HPeriodicWitness unit = witness_hperiodic(1.0, 0.0, 0.5);
  CHECK(unit(0.25) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sampled periodic witness stays within the unit seminorm ball") {
  GridPtr g = build_line_grid(0.0, 4.0, 0.125);
  for (double n : {1.0, 2.0, 4.0}) {
    HPeriodicWitness w = witness_hperiodic(n, 1.5, 0.5);
    std::vector<double> f = w.sample(*g);
    CHECK(seminorm(HDerivOp{0.5}, *g, f) <= 1.0 + 1e-6);
  }
}
