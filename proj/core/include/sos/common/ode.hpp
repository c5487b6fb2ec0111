#pragma once

#include <functional>

#include "sos/common/types.hpp"

namespace sos {

struct OdeOptions {
  double tol = 1e-9;       // absolute and relative tolerance
  double max_step = 0.05;
  double min_step = 1e-13;
  // When set, the error test is err <= tol * |h| (error per unit time), which
  // keeps the accumulated drift ~ tol * T on very long horizons.
  bool per_unit_time = false;
  long max_steps = 400000000L;
};

using OdeRhs = std::function<void(double t, const StateVec& y, StateVec& dy)>;
using Projector = std::function<void(StateVec& y)>;
// Called after each accepted step with both endpoints; return false to stop.
using StepObserver =
    std::function<bool(double t0, const StateVec& y0, double t1, const StateVec& y1)>;

struct OdeResult {
  double t = 0.0;
  StateVec y;
  long steps = 0;
  bool observer_stop = false;
};

// Dormand-Prince 5(4) with FSAL and PI-free step control. Integrates from t0
// to t1 (either direction). The projector, when given, is applied after every
// accepted step (constraint manifolds: spheres, unit tangent bundles).
OdeResult integrate_rk45(const OdeRhs& f, double t0, const StateVec& y0, double t1,
                         const OdeOptions& opt = {}, const Projector& project = {},
                         const StepObserver& observe = {});

// One classical RK4 step.
StateVec rk4_step(const OdeRhs& f, double t, const StateVec& y, double h);

// Fixed-step RK4 over n equal steps; the deterministic fallback integrator.
OdeResult integrate_rk4(const OdeRhs& f, double t0, const StateVec& y0, double t1,
                        long n_steps, const Projector& project = {});

}  // namespace sos
