#pragma once

#include <vector>

#include "sos/cohomology/one_form.hpp"
#include "sos/geometry/scenario.hpp"

namespace sos::measures {

// Time average of beta(X) along the orbit through p0, with the averages at
// dyadic sub-horizons reported so callers can judge convergence.
struct BirkhoffEstimate {
  double value = 0.0;                  // average over the full horizon
  std::vector<double> window_values;   // averages at horizon / 2^m, m = 3..0
  double spread = 0.0;                 // max |window - value| over the windows
};

// Integrates the augmented system (state, integral of beta(X)).  Requires
// horizon >= 100 characteristic periods; trajectories leaving the chart
// domain surface as IntegrationError.
BirkhoffEstimate birkhoff_average(const geometry::Scenario& s,
                                  const cohomology::GridOneForm& beta,
                                  const StateVec& p0, double horizon,
                                  double tol = 1e-10);

}  // namespace sos::measures
