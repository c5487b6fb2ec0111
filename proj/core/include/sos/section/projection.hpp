#pragma once

#include <vector>

#include "sos/cohomology/one_form.hpp"
#include "sos/geometry/scenario.hpp"

namespace sos::section {

// Node resolution per chart axis; -1 picks per-chart defaults chosen so the
// value histogram stays surjective (>= 64 nodes along the class direction).
struct ProjectionOptions {
  int n0 = -1;
  int n1 = -1;
  int n2 = -1;
};

// Circle-valued projection pr(p) = integral of eta from the basepoint, mod 1,
// tabulated on a chart node lattice.  The integral of the stored form along
// a chart segment is exact (constant coefficients plus exact potential
// differences), so node values are path-independent to rounding.
class ProjectionField {
 public:
  ProjectionField(const geometry::Scenario& s, const cohomology::GridOneForm& eta,
                  const StateVec& basepoint, const ProjectionOptions& opt = {});

  const cohomology::GridOneForm& form() const { return form_; }
  const geometry::Scenario& scenario() const { return *scen_; }
  cohomology::GridOneForm::Kind kind() const { return form_.kind(); }

  // Node lattice: dim(axis) counts nodes; radial axes carry both end sheets.
  int dim(int axis) const { return dim_[axis]; }
  bool periodic(int axis) const { return per_[axis]; }
  double span(int axis) const { return span_[axis]; }
  bool radial() const { return radial_; }
  StateVec node(int i, int j, int k) const;
  double node_value(int i, int j, int k) const;

  // pr at a chart point / at a scenario state (ambient for fibrations).
  double chart_value(const StateVec& chart_point) const;
  double value(const StateVec& state) const;

  // Lift increment along an explicitly lifted chart path (no wrapping).
  double integrate_along(const std::vector<StateVec>& chart_path) const;

  // All histogram bins of node values nonempty.
  bool surjective(int bins = 64) const;
  // Distance from a level to the nearest node value, on the circle.
  double min_node_distance(double level) const;
  // Candidate level farthest from the node values.
  double pick_regular_level(int candidates = 16) const;

 private:
  double raw_chart_value(const StateVec& chart_point) const;  // unwrapped lift
  const geometry::Scenario* scen_;
  cohomology::GridOneForm form_;
  StateVec base_chart_;
  double base_potential_ = 0.0;
  int n_[3] = {0, 0, 0};    // cell counts
  int dim_[3] = {0, 0, 0};  // node counts
  double span_[3] = {1.0, 1.0, 1.0};
  bool per_[3] = {true, true, true};
  bool radial_ = false;
  std::vector<double> pr_;
};

}  // namespace sos::section
