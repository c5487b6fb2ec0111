#pragma once

#include <functional>
#include <vector>

#include "sos/boundary/torus_field.hpp"
#include "sos/common/types.hpp"

namespace sos::boundary {

struct RotationOptions {
  int n_seeds = 8;           // evenly spaced starting phases
  long horizon_mult = 4096;  // total horizon, as a power-of-two multiple of T
  int skip_mult = 16;        // leading multiple of T dropped before averaging
  double tol = 1e-10;        // per-unit-time integration tolerance
};

struct WindowEstimate {
  int seed = 0;
  long mult = 0;  // horizon multiple this estimate was taken at
  double value = 0.0;
};

struct RotationEstimate {
  double value = 0.0;        // angular drift rate, lim theta(t) / t
  double error_bound = 0.0;  // spread across seeds and trailing dyadic windows
  std::vector<WindowEstimate> windows;
};

// Long-time angular drift of d theta / dt = b(t, theta) on the torus
// [0, T) x [0, 2 pi). The leading skip_mult periods are discarded so orbits
// falling onto attracting sets do not bias the difference quotient, then the
// drift is read off at dyadic horizons T * 2^j; the reported bound is the
// spread of those readings across seeds and the trailing windows.
RotationEstimate estimate_rotation(double period,
                                   const std::function<double(double, double)>& b,
                                   const RotationOptions& opt = {});

RotationEstimate estimate_rotation(const BoundaryTorusField& field,
                                   const RotationOptions& opt = {});

}  // namespace sos::boundary
