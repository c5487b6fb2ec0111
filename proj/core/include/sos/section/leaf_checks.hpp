#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sos/section/marching.hpp"
#include "sos/section/returns.hpp"

namespace sos::section {

struct TransversalityReport {
  double min_margin = 0.0;  // min over face centroids of eta(X)
  int faces = 0;
  int below = 0;  // faces with margin below the requested floor
  bool pass = false;
};

// Samples eta(X) at every face centroid and compares against margin_floor
// (use eps_star / 2 for a certified class).
TransversalityReport verify_transversality(const ProjectionField& P, const SectionLeaf& leaf,
                                           double margin_floor);

// Windings of the link boundary circles; checks n2 == 0 and n1 == eps.
bool verify_boundary_winding(const ProjectionField& P, const SectionLeaf& leaf);

struct DegreeRow {
  std::string label;
  int degree = 0;       // winding of pr composed with the loop
  double pairing = 0.0; // loop pairing of the underlying one-form
  bool match = false;
};

// Degree of pr along each loop must equal the rounded pairing exactly.
// Loops use scenario states (ambient coordinates for fibrations).
std::vector<DegreeRow> verify_degree(const ProjectionField& P,
                                     const std::vector<std::pair<std::string, std::vector<StateVec>>>& loops);

// Loops spanning the first homology of the chart, sampled densely enough for
// degree counting: coordinate circles for flat charts, meridian and longitude
// for tube and fibration charts.
std::vector<std::pair<std::string, std::vector<StateVec>>> basis_loops(const ProjectionField& P);

struct SectionVerdictOptions {
  double eps_star = 0.0;       // certified lower bound for eta(X)
  ReturnOptions returns;       // forwarded to return_time_stats
  bool run_returns = true;
};

struct SectionVerdict {
  bool pass = false;
  TransversalityReport transversality;
  bool winding_ok = false;
  bool degree_ok = false;
  bool surjective = false;
  std::vector<DegreeRow> degrees;
  ReturnStats returns;
  std::vector<std::string> notes;  // one line per failed item
};

// Aggregates every per-leaf check into one itemized verdict.
SectionVerdict verify_global_section(const ProjectionField& P, const SectionLeaf& leaf,
                                     const SectionVerdictOptions& opt);

}  // namespace sos::section
