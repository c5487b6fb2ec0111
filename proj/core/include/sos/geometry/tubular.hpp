#pragma once

#include <memory>

#include "sos/common/types.hpp"

namespace sos::geometry {

// Aligned tubular coordinates (t, r, theta) around a link component:
// t in R/(T Z) along the orbit, w = r e^{i theta} on the rescaled transverse
// disk (r in [0, 1]). Alignment means the longitude {theta = const, r = const}
// has zero pairing with the distinguished cohomology class, i.e. theta is the
// Seifert framing angle; this is asserted by tests, not assumed silently.
class TubularFrame {
 public:
  TubularFrame(int component, double period) : component_(component), period_(period) {}
  virtual ~TubularFrame() = default;

  int component() const { return component_; }
  double period() const { return period_; }

  // Chart point -> (t, r, theta). theta is reported as 0 on the core, where
  // the polar angle is undefined; callers must not round-trip r = 0 points.
  virtual Vec3 to_tube(const StateVec& p) const = 0;
  virtual StateVec from_tube(double t, double r, double theta) const = 0;

  // Pushforward Z of the scenario field through the tube chart, in cartesian
  // transverse coordinates w = (x, y): returns (Z^t, Z^x, Z^y).
  virtual Vec3 tube_field(double t, double x, double y) const = 0;

  // Transverse differential D_w (Z^x, Z^y) at (t, w). The default uses
  // Richardson-extrapolated central differences of tube_field.
  virtual Mat2 transverse_jacobian(double t, double x, double y) const;

 private:
  int component_;
  double period_;
};

}  // namespace sos::geometry
