#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kemja/logic/cnf.hpp"
#include "kemja/logic/parser.hpp"
#include "kemja/logic/qbf.hpp"
#include "kemja/logic/sat.hpp"

namespace kemja {

// "p cnf V C" header, one zero-terminated clause per line.
void write_dimacs(std::ostream& os, const CnfFormula& cnf, std::span<const int> extra_units = {});
std::string to_dimacs(const CnfFormula& cnf);
CnfFormula read_dimacs(std::istream& is);  // throws ParseError

struct SolverAnswer {
    SatResult result = SatResult::Unknown;
    std::vector<int> model;  // signed literals from the v lines
};

// Parses the "s ..." / "v ..." protocol; throws SolverError when there is no
// status line or the status is not one we understand.
SolverAnswer parse_solver_output(const std::string& text);

// One "e" line followed by one "a" line. Existential variables are renamed
// x_1..x_n and universal ones y_1..y_m in prefix order.
QbfInstance read_qdimacs(std::istream& is);

}  // namespace kemja
