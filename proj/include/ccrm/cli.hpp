#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccrm/grid.hpp"
#include "ccrm/operators.hpp"
#include "ccrm/state.hpp"

namespace ccrm::cli {

/// Grid spec strings: "line:<lo>:<hi>:<spacing>", "circle:<n>",
/// "qlattice:<anchor>:<q>:<depth>[:pos|:both]" (default both).
GridPtr parse_grid_spec(const std::string& spec);

/// Operator spec strings: "standard", "nonflat:<file.csv>" (rows "x,G"),
/// "hderiv:<h>", "qderiv:<q>", "rank1:<file.csv>" (one sample per node,
/// normalized on load).
OperatorSpec parse_operator_spec(const std::string& spec, const Grid& grid);

/// State spec strings: "point:<x>", "rect:<center>:<halfwidth>",
/// "density:<center>:<halfwidth>:<file.csv>" (uniform samples on
/// [-halfwidth, halfwidth], one per row).
StateMeasure parse_state_spec(const std::string& spec, const GridPtr& grid);

/// Entry point used by main(); streams make the CLI testable in-process.
/// Exit status: 0 success, 1 validation failures, 2 parse errors, 3 model
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ccrm::cli
