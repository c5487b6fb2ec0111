#pragma once

#include <array>
#include <string>
#include <vector>

#include "sos/section/projection.hpp"

namespace sos::section {

// One closed boundary polyline of a leaf, on either a blow-up torus of the
// link (on_link) or the outer wall of a tube chart.
struct LeafBoundary {
  std::vector<int> loop;  // ordered vertex ids, closed (last connects to first)
  bool on_link = false;
  double n1_raw = 0.0;  // longitude winding before rounding
  double n2_raw = 0.0;  // meridian winding before rounding
  int n1 = 0;
  int n2 = 0;
};

// Triangulated level set pr^{-1}(level).  Vertices are chart coordinates
// wrapped into the fundamental domain; faces are oriented so their normal
// points along increasing pr.
struct SectionLeaf {
  double level = 0.0;
  std::vector<StateVec> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<LeafBoundary> boundary;  // on link blow-up tori
  std::vector<LeafBoundary> wall;      // on the outer wall (tube charts)
  int components = 0;
  int euler = 0;  // V - E + F
  int n_boundary = 0;
  int genus = 0;
};

// Chart-aware displacement from a to b, shortest image on periodic axes.
StateVec anchored_delta(const ProjectionField& P, const StateVec& a, const StateVec& b);

// Extract the leaf by marching tetrahedra over the node lattice (Kuhn
// subdivision, welded vertices, periodic identifications, pole welding for
// fibration charts).  Throws ExtractionError when the level passes through
// nodes, the mesh fails to close, or a boundary winding is not an integer.
SectionLeaf extract_leaf(const ProjectionField& P, double level);

// Indexed triangle list in Wavefront OBJ form: one "v x y z" line per vertex
// (chart coordinates) and one 1-based "f i j k" line per face.
std::string to_obj(const SectionLeaf& leaf);

}  // namespace sos::section
