#pragma once

#include <array>
#include <string>
#include <vector>

#include "sos/boundary/rotation.hpp"
#include "sos/cohomology/dual_class.hpp"
#include "sos/measures/certify.hpp"

namespace sos::measures {

// Per-link-component outcome of the rotation-number requirement.  Carries
// the sampled boundary field and the rotation windows so reports can show
// the evidence, not just the verdict.
struct ComponentCheck {
  int component = 0;
  double period = 0.0;
  double rho_theta = 0.0;
  double rho_theta_error = 0.0;
  double rho_y = 0.0;
  bool positive = false;
  std::string orbit_class;          // elliptic / hyperbolic / parabolic
  bool generic_obstruction = false; // rho_y vanishes at a hyperbolic component
  std::array<Cplx, 2> multipliers{};
  boundary::RotationEstimate rotation;
  boundary::BoundaryTorusField field;
};

struct ConditionReport {
  std::vector<ComponentCheck> components;
  bool rotation_holds = false;  // (a): every component has rho_y > 0
  Certificate certificate;      // (b): positivity over occupation measures
  bool cone_holds = false;
  bool holds = false;           // (a) and (b)
};

struct ConditionOptions {
  int grid_n = 8;  // cells along each angular chart axis
  int grid_r = 6;  // cells along the radial axis of tube/fibration charts
  double delta_slack = 1e-8;
  boundary::RotationOptions rotation;
  lp::SolveOptions solve;
};

// Full check: refines the link orbits, estimates boundary rotation numbers
// for part (a), and runs the LP certification of part (b) on the blown-up
// occupation grid.  The class must match the scenario's chart type.
ConditionReport check_condition_iii(const geometry::Scenario& s,
                                    const cohomology::DualClass& cls,
                                    const ConditionOptions& opt = {});

}  // namespace sos::measures
