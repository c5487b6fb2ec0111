#pragma once

#include <functional>

#include "sos/common/grid2d.hpp"
#include "sos/common/types.hpp"
#include "sos/orbit/orbit.hpp"

namespace sos::boundary {

// Angular field b(t, theta) on a blown-up boundary torus, held on a periodic
// grid over [0, T) x [0, 2 pi). The grid form is what the rest of the
// pipeline consumes: rotation-number integration, invariant-measure pairings,
// and the exported diagnostics all read the same values.
class BoundaryTorusField {
 public:
  BoundaryTorusField() = default;

  // b(t, theta) = < A2(t) e^{i theta}, i e^{i theta} > from the sampled
  // linearization along the core orbit
  static BoundaryTorusField from_block(const orbit::TransverseBlock& block, int nt = 256,
                                       int ntheta = 256);

  static BoundaryTorusField from_function(double period,
                                          const std::function<double(double, double)>& b,
                                          int nt = 256, int ntheta = 256);

  double period() const { return period_; }
  double eval(double t, double theta) const { return grid_.eval(t, theta); }
  const PeriodicGrid2d& grid() const { return grid_; }

 private:
  double period_ = 0.0;
  PeriodicGrid2d grid_;
};

}  // namespace sos::boundary
