#pragma once

#include <string>

#include "ccrm/grid.hpp"
#include "ccrm/state.hpp"
#include "ccrm/transport.hpp"

namespace ccrm {

/// Shortest-roundtrip decimal form with up to 17 significant digits,
/// locale-independent ('.' decimal point, no grouping).
std::string format_double(double v);

/// Compact spec string identifying a grid, e.g. "line:0:4:0.01".
std::string grid_id(const Grid& grid);

std::string to_json(const Grid& grid);
std::string to_json(const StateMeasure& s);

/// {"value": <number> | "infinite", "witness"?: [...], "plan"?: [[s,t,m]...],
///  "cut_node"?: <int>}. Witness and plan are emitted only when requested and
/// the result is finite.
std::string to_json(const DistanceResult& r, bool include_witness,
                    bool include_plan);

}  // namespace ccrm
