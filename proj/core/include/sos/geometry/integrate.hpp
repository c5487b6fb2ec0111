#pragma once

#include <string>
#include <vector>

#include "sos/common/ode.hpp"
#include "sos/geometry/scenario.hpp"

namespace sos::geometry {

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVec> states;  // wrapped chart representatives
  bool complete = false;
  std::string error;             // set when the trajectory left the atlas
};

inline OdeOptions default_flow_options() {
  OdeOptions o;
  o.tol = 1e-9;
  o.max_step = 0.05;
  return o;
}

// Integrates the scenario flow for t_span time units (either sign). Samples
// are recorded at every accepted step. If the trajectory leaves the atlas the
// partial path is returned with complete = false and a diagnostic message.
Trajectory integrate_flow(const Scenario& s, const StateVec& p0, double t_span,
                          const OdeOptions& opt = default_flow_options());

// Endpoint-only variant; throws IntegrationError when the path leaves the
// atlas or the step budget is exhausted.
StateVec flow_endpoint(const Scenario& s, const StateVec& p0, double t_span,
                       const OdeOptions& opt = default_flow_options());

// Deterministic fixed-step fallback (classical RK4, n_steps equal steps).
StateVec flow_endpoint_rk4(const Scenario& s, const StateVec& p0, double t_span, long n_steps);

}  // namespace sos::geometry
