#pragma once

#include <iosfwd>
#include <string>

#include "sos/lp/simplex.hpp"

namespace sos::lp {

// Serializes the problem in the CPLEX LP text format (Minimize / Subject To /
// Bounds / End), readable by standard solvers for cross-checking.
void write_lp_text(const Problem& p, std::ostream& os);
std::string lp_text(const Problem& p);

}  // namespace sos::lp
