#include "ccrm/serialize.hpp"

#include <charconv>
#include <cmath>

#include "ccrm/error.hpp"

namespace ccrm {

std::string format_double(double v) {
  if (!std::isfinite(v))
    fail(ErrorCode::Internal, "cannot format a non-finite number");
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc())
    fail(ErrorCode::Internal, "number formatting failed");
  return std::string(buf, end);
}

namespace {

std::string join_numbers(const std::vector<double>& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string grid_id(const Grid& grid) {
  switch (grid.topology) {
    case Topology::Line:
      return "line:" + format_double(grid.window_lo) + ":" +
             format_double(grid.window_hi) + ":" + format_double(grid.spacing);
    case Topology::Circle:
      return "circle:" + std::to_string(grid.size());
    case Topology::QLattice:
      return "qlattice:" + format_double(grid.anchor) + ":" +
             format_double(grid.ratio) + ":" + std::to_string(grid.depth) +
             (grid.signs == QSigns::Both ? ":both" : ":pos");
  }
  fail(ErrorCode::Internal, "unhandled topology");
}

std::string to_json(const Grid& grid) {
  std::string out = "{\"topology\":\"";
  switch (grid.topology) {
    case Topology::Line: out += "line"; break;
    case Topology::Circle: out += "circle"; break;
    case Topology::QLattice: out += "qlattice"; break;
  }
  out += "\",\"nodes\":" + join_numbers(grid.nodes);
  if (grid.topology != Topology::QLattice)
    out += ",\"spacing\":" + format_double(grid.spacing);
  out += "}";
  return out;
}

std::string to_json(const StateMeasure& s) {
  return "{\"grid_id\":\"" + grid_id(*s.grid) +
         "\",\"weights\":" + join_numbers(s.weights) + "}";
}

std::string to_json(const DistanceResult& r, bool include_witness,
                    bool include_plan) {
  std::string out = "{\"value\":";
  if (r.infinite) {
    out += "\"infinite\"";
  } else {
    out += format_double(r.value);
    if (include_witness) out += ",\"witness\":" + join_numbers(r.witness);
    if (include_plan) {
      out += ",\"plan\":[";
      for (size_t i = 0; i < r.plan.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(r.plan[i].source) + "," +
               std::to_string(r.plan[i].target) + "," +
               format_double(r.plan[i].mass) + "]";
      }
      out += "]";
    }
  }
  if (r.cut_node) out += ",\"cut_node\":" + std::to_string(*r.cut_node);
  out += "}";
  return out;
}

}  // namespace ccrm
