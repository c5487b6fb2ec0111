#include "sos/geometry/integrate.hpp"

namespace sos::geometry {

namespace {

OdeRhs make_rhs(const Scenario& s) {
  return [&s](double, const StateVec& y, StateVec& dy) { dy = s.field(y); };
}

Projector make_projector(const Scenario& s) {
  return [&s](StateVec& y) {
    if (s.has_constraint()) s.project(y);
    y = s.wrap(y);
  };
}

}  // namespace

Trajectory integrate_flow(const Scenario& s, const StateVec& p0, double t_span,
                          const OdeOptions& opt) {
  Trajectory traj;
  if (!s.in_domain(p0)) {
    traj.error = s.name() + ": initial point is outside the atlas";
    return traj;
  }
  StateVec start = s.wrap(p0);
  traj.times.push_back(0.0);
  traj.states.push_back(start);

  auto observe = [&](double, const StateVec&, double t1, const StateVec& y1) {
    traj.times.push_back(t1);
    traj.states.push_back(y1);
    return s.in_domain(y1);
  };

  try {
    OdeResult res =
        integrate_rk45(make_rhs(s), 0.0, start, t_span, opt, make_projector(s), observe);
    if (res.observer_stop) {
      traj.error = s.name() + ": trajectory left the atlas at t=" + std::to_string(res.t);
      return traj;
    }
  } catch (const std::domain_error& e) {
    traj.error = e.what();  // field evaluated off-atlas inside a trial step
    return traj;
  }
  traj.complete = true;
  return traj;
}

StateVec flow_endpoint(const Scenario& s, const StateVec& p0, double t_span,
                       const OdeOptions& opt) {
  if (!s.in_domain(p0))
    throw IntegrationError("flow_endpoint(" + s.name() + "): initial point outside the atlas");
  auto observe = [&](double, const StateVec&, double, const StateVec& y1) {
    return s.in_domain(y1);
  };
  OdeResult res;
  try {
    res = integrate_rk45(make_rhs(s), 0.0, s.wrap(p0), t_span, opt, make_projector(s), observe);
  } catch (const std::domain_error& e) {
    throw IntegrationError("flow_endpoint(" + s.name() + "): " + e.what());
  }
  if (res.observer_stop)
    throw IntegrationError("flow_endpoint(" + s.name() + "): trajectory left the atlas at t=" +
                           std::to_string(res.t));
  return res.y;
}

StateVec flow_endpoint_rk4(const Scenario& s, const StateVec& p0, double t_span, long n_steps) {
  OdeResult res = integrate_rk4(make_rhs(s), 0.0, s.wrap(p0), t_span, n_steps, make_projector(s));
  return res.y;
}

}  // namespace sos::geometry
