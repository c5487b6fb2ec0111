#pragma once

#include <cstdint>
#include <vector>

#include "sos/section/projection.hpp"

namespace sos::section {

struct ReturnOptions {
  int n_samples = 1000;
  double eps_star = 0.0;  // certified lower bound for the lift rate eta(X)
  double cutoff = -1.0;   // max flow time per direction; -1 -> 10 / eps_star
  std::uint64_t seed = 20260816;
  double tol = 1e-9;      // ODE tolerance per unit time
};

struct ReturnStats {
  int samples = 0;
  int misses = 0;  // starts whose forward or backward hit exceeded the cutoff
  // tau is the round trip forward + backward: the return time of the leaf
  // point hit behind the sample, whose orbit segment gains exactly one unit
  // of lift.  One-sided hitting times are reported as maxima.
  double tau_min = 0.0;
  double tau_mean = 0.0;
  double tau_max = 0.0;
  double tau_forward_max = 0.0;
  double tau_back_max = 0.0;
  std::vector<double> taus;  // per-hit round trips, sample order
};

// Hitting times of the level set pr^{-1}(level) from random starts, forward
// and backward.  The lift of pr is strictly monotone along the flow, so each
// hit is found by driving the augmented lift across the neighboring integer
// translate of the level and bisecting inside the step.  A start that fails
// to cross within the cutoff counts as a miss; misses are reported, not
// thrown.
ReturnStats return_time_stats(const ProjectionField& P, double level, const ReturnOptions& opt);

}  // namespace sos::section
