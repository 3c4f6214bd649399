#include "ccrm/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ccrm/closed_form.hpp"
#include "ccrm/error.hpp"
#include "ccrm/serialize.hpp"
#include "ccrm/transport.hpp"

namespace ccrm::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v))
      fail(ErrorCode::ParseError, "bad " + what + ": '" + text + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad " + what + ": '" + text + "'");
  }
}

int parse_integer(const std::string& text, const std::string& what) {
  double v = parse_number(text, what);
  int n = static_cast<int>(std::llround(v));
  if (std::abs(v - n) > 0.0)
    fail(ErrorCode::ParseError, what + " must be an integer: '" + text + "'");
  return n;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

SampledFunction read_two_column_csv(const std::string& path) {
  std::vector<double> xs, ys;
  for (const std::string& line : read_lines(path)) {
    std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 2)
      fail(ErrorCode::ParseError, "expected two columns in " + path);
    xs.push_back(parse_number(cells[0], "abscissa in " + path));
    ys.push_back(parse_number(cells[1], "value in " + path));
  }
  if (xs.size() < 2)
    fail(ErrorCode::ParseError, "need at least 2 rows in " + path);
  return make_sampled(std::move(xs), std::move(ys));
}

std::vector<double> read_single_column_csv(const std::string& path) {
  std::vector<double> values;
  for (const std::string& line : read_lines(path))
    values.push_back(parse_number(line, "value in " + path));
  if (values.empty()) fail(ErrorCode::ParseError, "empty file: " + path);
  return values;
}

}  // namespace

GridPtr parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts = split(spec, ':');
  if (parts.empty()) fail(ErrorCode::ParseError, "empty grid spec");
  const std::string& kind = parts[0];
  if (kind == "line") {
    if (parts.size() != 4)
      fail(ErrorCode::ParseError, "expected line:<lo>:<hi>:<spacing>");
    return build_line_grid(parse_number(parts[1], "grid lo"),
                           parse_number(parts[2], "grid hi"),
                           parse_number(parts[3], "grid spacing"));
  }
  if (kind == "circle") {
    if (parts.size() != 2) fail(ErrorCode::ParseError, "expected circle:<n>");
    return build_circle_grid(parse_integer(parts[1], "node count"));
  }
  if (kind == "qlattice") {
    if (parts.size() != 4 && parts.size() != 5)
      fail(ErrorCode::ParseError,
           "expected qlattice:<anchor>:<q>:<depth>[:pos|:both]");
    QSigns signs = QSigns::Both;
    if (parts.size() == 5) {
      if (parts[4] == "pos") signs = QSigns::PositiveOnly;
      else if (parts[4] == "both") signs = QSigns::Both;
      else fail(ErrorCode::ParseError, "sign set must be 'pos' or 'both'");
    }
    return build_q_grid(parse_number(parts[1], "anchor"),
                        parse_number(parts[2], "ratio"),
                        parse_integer(parts[3], "depth"), signs);
  }
  fail(ErrorCode::ParseError, "unknown grid kind: '" + kind + "'");
}

OperatorSpec parse_operator_spec(const std::string& spec, const Grid& grid) {
  std::vector<std::string> parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "standard") {
    if (parts.size() != 1) fail(ErrorCode::ParseError, "expected 'standard'");
    return StandardOp{};
  }
  if (kind == "hderiv") {
    if (parts.size() != 2) fail(ErrorCode::ParseError, "expected hderiv:<h>");
    return HDerivOp{parse_number(parts[1], "step h")};
  }
  if (kind == "qderiv") {
    if (parts.size() != 2) fail(ErrorCode::ParseError, "expected qderiv:<q>");
    return QDerivOp{parse_number(parts[1], "ratio q")};
  }
  if (kind == "nonflat") {
    if (parts.size() < 2)
      fail(ErrorCode::ParseError, "expected nonflat:<file.csv>");
    std::string path = spec.substr(kind.size() + 1);
    return NonFlatOp{read_two_column_csv(path)};
  }
  if (kind == "rank1") {
    if (parts.size() < 2)
      fail(ErrorCode::ParseError, "expected rank1:<file.csv>");
    std::string path = spec.substr(kind.size() + 1);
    std::vector<double> psi0 = read_single_column_csv(path);
    if (static_cast<int>(psi0.size()) != grid.size())
      fail(ErrorCode::SampleLengthMismatch,
           "rank1 file must hold one sample per grid node");
    double norm2 = 0.0;
    for (double p : psi0) norm2 += p * p * grid.spacing;
    if (!(norm2 > 0.0))
      fail(ErrorCode::InvalidArgument, "rank1 samples must not be all zero");
    for (double& p : psi0) p /= std::sqrt(norm2);
    return RankOneProjectorOp{std::move(psi0)};
  }
  fail(ErrorCode::ParseError, "unknown operator kind: '" + kind + "'");
}

StateMeasure parse_state_spec(const std::string& spec, const GridPtr& grid) {
  std::vector<std::string> parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "point") {
    if (parts.size() != 2) fail(ErrorCode::ParseError, "expected point:<x>");
    return point_state(grid, parse_number(parts[1], "point coordinate"));
  }
  if (kind == "rect") {
    if (parts.size() != 3)
      fail(ErrorCode::ParseError, "expected rect:<center>:<halfwidth>");
    return rect_state(grid, parse_number(parts[1], "rect center"),
                      parse_number(parts[2], "rect halfwidth"));
  }
  if (kind == "density") {
    if (parts.size() < 4)
      fail(ErrorCode::ParseError,
           "expected density:<center>:<halfwidth>:<file.csv>");
    double center = parse_number(parts[1], "density center");
    double halfwidth = parse_number(parts[2], "density halfwidth");
    std::string path =
        spec.substr(kind.size() + parts[1].size() + parts[2].size() + 3);
    return density_state(grid, center, halfwidth,
                         read_single_column_csv(path));
  }
  fail(ErrorCode::ParseError, "unknown state kind: '" + kind + "'");
}

namespace {

struct ComputeConfig {
  std::string op;
  std::string grid;
  std::string a;
  std::string b;
  std::string out_path;
  bool with_witness = false;
  bool with_plan = false;
  bool with_cut = false;
};

struct SweepConfig {
  std::string op;
  std::string grid;
  std::string a;
  std::string b;
  std::string axis;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::string out_path;
};

void write_output(const std::string& text, const std::string& path,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) fail(ErrorCode::ParseError, "cannot open output file: " + path);
  file << text;
}

DistanceResult solve_config(const std::string& op_spec,
                            const std::string& grid_spec,
                            const std::string& a_spec,
                            const std::string& b_spec, bool with_cut) {
  GridPtr grid = parse_grid_spec(grid_spec);
  OperatorSpec op = parse_operator_spec(op_spec, *grid);
  StateMeasure a = parse_state_spec(a_spec, grid);
  StateMeasure b = parse_state_spec(b_spec, grid);
  ConstraintGraph graph = compile(op, *grid);
  DistanceResult result = spectral_distance(graph, a, b);
  if (with_cut) result.cut_node = circle_w1_cut(*grid, a, b).cut_node;
  return result;
}

int run_compute(const ComputeConfig& cfg, std::ostream& out) {
  DistanceResult result =
      solve_config(cfg.op, cfg.grid, cfg.a, cfg.b, cfg.with_cut);
  write_output(to_json(result, cfg.with_witness, cfg.with_plan) + "\n",
               cfg.out_path, out);
  return 0;
}

// rewrites the parameter that the sweep axis drives; everything else in the
// configuration is taken verbatim from the spec strings
struct SweepBindings {
  std::string op;
  std::string grid;
  std::string a;
  std::string b;
};

std::string with_center(const std::string& state_spec, double center) {
  std::vector<std::string> parts = split(state_spec, ':');
  if (parts[0] == "point") return "point:" + format_double(center);
  if (parts[0] == "rect" && parts.size() == 3)
    return "rect:" + format_double(center) + ":" + parts[2];
  if (parts[0] == "density" && parts.size() >= 4) {
    std::string tail = state_spec.substr(parts[0].size() + parts[1].size() + 2);
    return "density:" + format_double(center) + ":" + tail;
  }
  fail(ErrorCode::ParseError, "axis x cannot rebind state '" + state_spec + "'");
}

std::string with_halfwidth(const std::string& state_spec, double halfwidth) {
  std::vector<std::string> parts = split(state_spec, ':');
  if (parts[0] == "rect" && parts.size() == 3)
    return "rect:" + parts[1] + ":" + format_double(halfwidth);
  if (parts[0] == "density" && parts.size() >= 4) {
    std::string tail =
        state_spec.substr(parts[0].size() + parts[1].size() + parts[2].size() + 2);
    return "density:" + parts[1] + ":" + format_double(halfwidth) + tail;
  }
  fail(ErrorCode::ParseError,
       "axis eps needs interval states, got '" + state_spec + "'");
}

SweepBindings bind_axis(const SweepConfig& cfg, double value) {
  SweepBindings b{cfg.op, cfg.grid, cfg.a, cfg.b};
  if (cfg.axis == "x") {
    b.b = with_center(cfg.b, value);
  } else if (cfg.axis == "eps") {
    b.a = with_halfwidth(cfg.a, value);
    b.b = with_halfwidth(cfg.b, value);
  } else if (cfg.axis == "h") {
    if (split(cfg.op, ':')[0] != "hderiv")
      fail(ErrorCode::ParseError, "axis h needs an hderiv operator");
    b.op = "hderiv:" + format_double(value);
  } else if (cfg.axis == "q") {
    if (split(cfg.op, ':')[0] != "qderiv")
      fail(ErrorCode::ParseError, "axis q needs a qderiv operator");
    std::vector<std::string> parts = split(cfg.grid, ':');
    if (parts[0] != "qlattice")
      fail(ErrorCode::ParseError, "axis q needs a qlattice grid");
    parts[2] = format_double(value);
    std::string grid_spec = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) grid_spec += ":" + parts[i];
    b.grid = grid_spec;
    b.op = "qderiv:" + format_double(value);
  } else {
    fail(ErrorCode::ParseError, "axis must be one of x, eps, h, q");
  }
  return b;
}

unsigned thread_budget(size_t jobs) {
  unsigned budget = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("CCRM_THREADS")) {
    try {
      budget = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "CCRM_THREADS must be a number");
    }
  }
  if (budget < 1) budget = 1;
  return static_cast<unsigned>(std::min<size_t>(budget, jobs));
}

int run_sweep(const SweepConfig& cfg, std::ostream& out) {
  if (!(cfg.step > 0.0)) fail(ErrorCode::ParseError, "sweep step must be positive");
  if (!(cfg.start < cfg.stop))
    fail(ErrorCode::ParseError, "sweep start must be below stop");
  std::vector<double> values;
  for (int k = 0;; ++k) {
    double v = cfg.start + k * cfg.step;
    if (v > cfg.stop + 1e-12) break;
    values.push_back(v);
  }
  if (values.empty()) fail(ErrorCode::ParseError, "sweep range is empty");

  std::vector<std::string> rows(values.size());
  auto compute_row = [&](size_t i) {
    SweepBindings bound = bind_axis(cfg, values[i]);
    DistanceResult r = solve_config(bound.op, bound.grid, bound.a, bound.b, false);
    rows[i] = format_double(values[i]) + "," +
              (r.infinite ? "inf" : format_double(r.value)) + "\n";
  };

  unsigned threads = thread_budget(values.size());
  if (threads <= 1) {
    for (size_t i = 0; i < values.size(); ++i) compute_row(i);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < values.size();
           i = next.fetch_add(1)) {
        try {
          compute_row(i);
        } catch (...) {
          std::lock_guard<std::mutex> hold(failure_lock);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::string csv = "param,value\n";
  for (const std::string& row : rows) csv += row;
  write_output(csv, cfg.out_path, out);
  return 0;
}

// one validation row: a solver value checked against an oracle value
struct CaseRow {
  std::string name;
  std::string solver;
  std::string oracle;
  double diff = 0.0;
  bool pass = false;
};

CaseRow check_close(const std::string& name, double solver, double oracle,
                    double tol) {
  double diff = std::abs(solver - oracle);
  return {name, format_double(solver), format_double(oracle), diff,
          diff <= tol};
}

CaseRow check_extended(const std::string& name, const DistanceResult& solver,
                       const ExtendedReal& oracle, double tol) {
  if (solver.infinite || oracle.infinite) {
    bool pass = solver.infinite == oracle.infinite;
    return {name, solver.infinite ? "inf" : format_double(solver.value),
            oracle.infinite ? "inf" : format_double(oracle.value),
            pass ? 0.0 : std::numeric_limits<double>::infinity(), pass};
  }
  return check_close(name, solver.value, oracle.value, tol);
}

CaseRow check_at_least(const std::string& name, double solver, double bound) {
  return {name, format_double(solver), format_double(bound), solver - bound,
          solver >= bound};
}

DistanceResult point_pair(const GridPtr& grid, const ConstraintGraph& g,
                          double x, double y) {
  return spectral_distance(g, point_state(grid, x), point_state(grid, y));
}

std::vector<CaseRow> scenario_euclid() {
  GridPtr grid = build_line_grid(0.0, 4.0, 0.01);
  ConstraintGraph g = compile(StandardOp{}, *grid);
  std::vector<CaseRow> rows;
  for (auto [x, y] : std::initializer_list<std::pair<double, double>>{
           {0.0, 1.5}, {0.25, 3.75}, {1.37, 2.89}, {0.0, 4.0}, {2.0, 2.01}}) {
    DistanceResult r = point_pair(grid, g, x, y);
    rows.push_back(check_close("|" + format_double(x) + "-" + format_double(y) +
                                   "|",
                               r.value, std::abs(x - y), 1e-9));
  }
  return rows;
}

std::vector<CaseRow> scenario_nonflat() {
  GridPtr grid = build_line_grid(0.0, 2.0, 0.005);
  std::vector<double> ys;
  ys.reserve(grid->nodes.size());
  for (double t : grid->nodes) ys.push_back(1.0 + t * t);
  SampledFunction curved = make_sampled(grid->nodes, ys);
  ConstraintGraph g = compile(NonFlatOp{curved}, *grid);
  std::vector<CaseRow> rows;
  for (auto [x, y] : std::initializer_list<std::pair<double, double>>{
           {0.0, 1.0}, {0.5, 1.5}, {0.0, 2.0}, {0.25, 0.75}}) {
    DistanceResult r = point_pair(grid, g, x, y);
    rows.push_back(check_close("curved " + format_double(x) + ".." +
                                   format_double(y),
                               r.value, geodesic_distance(curved, x, y), 1e-5));
  }
  SampledFunction flat = constant_sampled(0.0, 2.0, 1.0);
  ConstraintGraph gf = compile(NonFlatOp{flat}, *grid);
  DistanceResult r = point_pair(grid, gf, 0.0, 1.5);
  rows.push_back(check_close("flat 0..1.5", r.value, 1.5, 1e-12));
  return rows;
}

std::vector<CaseRow> scenario_steps() {
  GridPtr grid = build_line_grid(0.0, 4.0, 0.125);
  ConstraintGraph g = compile(HDerivOp{0.5}, *grid);
  std::vector<CaseRow> rows;
  for (auto [x, y] : std::initializer_list<std::pair<double, double>>{
           {0.5, 2.0}, {0.0, 4.0}, {1.125, 2.625}, {0.0, 0.75}, {0.125, 0.5}}) {
    DistanceResult r = point_pair(grid, g, x, y);
    rows.push_back(check_extended(format_double(x) + ".." + format_double(y), r,
                                  h_distance(0.5, x, y), 1e-9));
  }
  return rows;
}

std::vector<CaseRow> scenario_fatpoint() {
  std::vector<CaseRow> rows;
  {
    GridPtr grid = build_line_grid(0.0, 4.0, 0.0625);
    ConstraintGraph g = compile(HDerivOp{0.5}, *grid);
    for (auto [x, y] : std::initializer_list<std::pair<double, double>>{
             {1.0, 2.5}, {1.0, 2.3125}, {0.5, 3.1875}}) {
      DistanceResult r = spectral_distance(g, rect_state(grid, x, 0.25),
                                           rect_state(grid, y, 0.25));
      rows.push_back(check_extended(
          "width=h " + format_double(x) + ".." + format_double(y), r,
          fat_distance(0.5, 0.5, x, y), 0.0625));
    }
  }
  {
    GridPtr grid = build_line_grid(0.0, 4.0, 0.025);
    ConstraintGraph g = compile(HDerivOp{0.5}, *grid);
    for (auto [x, y] : std::initializer_list<std::pair<double, double>>{
             {1.0, 2.5}, {1.0, 2.4}}) {
      DistanceResult r = spectral_distance(g, rect_state(grid, x, 0.15),
                                           rect_state(grid, y, 0.15));
      rows.push_back(check_extended(
          "width=0.3 " + format_double(x) + ".." + format_double(y), r,
          fat_distance(0.5, 0.3, x, y), 1e-9));
    }
  }
  return rows;
}

std::vector<CaseRow> scenario_qscale() {
  GridPtr grid = build_q_grid(1.0, 0.25, 12, QSigns::Both);
  ConstraintGraph g = compile(QDerivOp{0.25}, *grid);
  std::vector<CaseRow> rows;
  for (auto [x, y] : std::initializer_list<std::pair<double, double>>{
           {1.0, 0.25}, {1.0, 0.0625}, {1.0, -1.0}, {0.25, -0.0625},
           {1.0, 0.0}}) {
    DistanceResult r = point_pair(grid, g, x, y);
    Bound bound = q_bounds(0.25, x, y);
    std::string name = format_double(x) + ".." + format_double(y);
    if (bound.exact) {
      rows.push_back(check_close(name, r.value, *bound.exact, 1e-9));
    } else {
      bool pass = r.value >= bound.lower - 1e-9 &&
                  r.value <= bound.upper + std::pow(0.25, 6);
      rows.push_back({name, format_double(r.value),
                      "[" + format_double(bound.lower) + "," +
                          format_double(bound.upper) + "]",
                      0.0, pass});
    }
  }
  return rows;
}

std::vector<CaseRow> scenario_circle_rect() {
  GridPtr grid = build_circle_grid(256);
  ConstraintGraph g = compile(StandardOp{}, *grid);
  StateMeasure home = rect_state(grid, 0.0, kPi / 4.0);
  std::vector<CaseRow> rows;
  for (double x : {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi}) {
    DistanceResult r = spectral_distance(g, home, rect_state(grid, x, kPi / 4.0));
    rows.push_back(check_close("x=" + format_double(x), r.value,
                               circle_rect_distance(kPi / 4.0, x), 0.05));
  }
  return rows;
}

std::vector<CaseRow> scenario_minlen() {
  GridPtr grid = build_line_grid(0.0, 4.0, 0.125);
  ConstraintGraph g = compile(HDerivOp{0.5}, *grid);
  double shortest = std::numeric_limits<double>::infinity();
  int n = grid->size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 4; j < n; j += 4) {
      DistanceResult r =
          point_pair(grid, g, grid->nodes[static_cast<size_t>(i)],
                     grid->nodes[static_cast<size_t>(j)]);
      shortest = std::min(shortest, r.value);
    }
  return {check_at_least("min over finite pairs", shortest,
                         min_length_bound(2.0 / 0.5))};
}

const std::vector<std::pair<std::string, std::vector<CaseRow> (*)()>>&
scenario_catalog() {
  static const std::vector<std::pair<std::string, std::vector<CaseRow> (*)()>>
      catalog = {
          {"euclid", scenario_euclid},     {"nonflat", scenario_nonflat},
          {"prop2", scenario_steps},       {"fatpoint", scenario_fatpoint},
          {"qscale", scenario_qscale},     {"prop5.13", scenario_circle_rect},
          {"minlen", scenario_minlen},
      };
  return catalog;
}

int run_validate(const std::string& scenario, const std::string& out_path,
                 std::ostream& out) {
  std::vector<std::pair<std::string, std::vector<CaseRow>>> report;
  bool matched = false;
  for (const auto& [name, runner] : scenario_catalog()) {
    if (!scenario.empty() && scenario != name) continue;
    matched = true;
    report.emplace_back(name, runner());
  }
  if (!matched)
    fail(ErrorCode::UnknownScenario, "unknown scenario: '" + scenario + "'");

  std::ostringstream table;
  table << std::left << std::setw(12) << "scenario" << std::setw(26) << "case"
        << std::setw(22) << "solver" << std::setw(22) << "oracle"
        << std::setw(14) << "diff" << "status\n";
  bool all_pass = true;
  for (const auto& [name, rows] : report) {
    for (const CaseRow& row : rows) {
      all_pass = all_pass && row.pass;
      std::ostringstream diff;
      diff << std::setprecision(3) << row.diff;
      table << std::left << std::setw(12) << name << std::setw(26) << row.name
            << std::setw(22) << row.solver << std::setw(22) << row.oracle
            << std::setw(14) << diff.str() << (row.pass ? "pass" : "fail")
            << "\n";
    }
  }
  write_output(table.str(), out_path, out);
  return all_pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"spectral distances between states under deformed "
               "position-momentum commutation relations"};
  app.require_subcommand(1);

  ComputeConfig compute_cfg;
  CLI::App* compute = app.add_subcommand("compute", "one distance");
  compute->add_option("--op", compute_cfg.op, "operator spec")->required();
  compute->add_option("--grid", compute_cfg.grid, "grid spec")->required();
  compute->add_option("--a", compute_cfg.a, "first state spec")->required();
  compute->add_option("--b", compute_cfg.b, "second state spec")->required();
  compute->add_flag("--witness", compute_cfg.with_witness,
                    "include the dual potential");
  compute->add_flag("--plan", compute_cfg.with_plan,
                    "include the transport plan");
  compute->add_flag("--cut", compute_cfg.with_cut,
                    "include the optimal circle cut node");
  compute->add_option("--out", compute_cfg.out_path, "output file");

  SweepConfig sweep_cfg;
  CLI::App* sweep = app.add_subcommand("sweep", "distance along a parameter");
  sweep->add_option("--op", sweep_cfg.op, "operator spec")->required();
  sweep->add_option("--grid", sweep_cfg.grid, "grid spec")->required();
  sweep->add_option("--a", sweep_cfg.a, "first state spec")->required();
  sweep->add_option("--b", sweep_cfg.b, "second state spec")->required();
  sweep->add_option("--axis", sweep_cfg.axis, "x, eps, h, or q")->required();
  sweep->add_option("--start", sweep_cfg.start, "first value")->required();
  sweep->add_option("--stop", sweep_cfg.stop, "last value")->required();
  sweep->add_option("--step", sweep_cfg.step, "increment")->required();
  sweep->add_option("--out", sweep_cfg.out_path, "output file");

  std::string scenario;
  std::string validate_out;
  CLI::App* validate =
      app.add_subcommand("validate", "solver versus closed forms");
  validate->add_option("scenario", scenario, "catalog entry (default: all)");
  validate->add_option("--out", validate_out, "output file");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ccrm");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (compute->parsed()) return run_compute(compute_cfg, out);
    if (sweep->parsed()) return run_sweep(sweep_cfg, out);
    return run_validate(scenario, validate_out, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? 2 : 3;
  }
}

}  // namespace ccrm::cli
