#pragma once

#include "sos/common/types.hpp"
#include "sos/geometry/tubular.hpp"

namespace sos::boundary {

// Polar blow-up of the flow near a core orbit. In tube coordinates the
// transverse field vanishes on the core, Z^w(t, 0) = 0, so it factors as
// Z^w(t, w) = A(t, w) w with
//
//     A(t, w) = integral_0^1 D_w Z^w(t, tau w) dtau.
//
// Substituting w = r e^{i theta} turns the chart singularity at r = 0 into a
// smooth field on the cylinder [0, r_max) x T^2:
//
//     W^t     = Z^t(t, r e^{i theta})
//     W^r     = r < A e^{i theta},   e^{i theta} >
//     W^theta =   < A e^{i theta}, i e^{i theta} >
//
// The restriction to the blown-up torus r = 0 is (1, 0, b(t, theta)) with
// b(t, theta) = < A2(t) e^{i theta}, i e^{i theta} > and A2(t) = D_w Z^w(t, 0).
class BlowupField {
 public:
  explicit BlowupField(const geometry::TubularFrame& frame, int quad_points = 16);

  // averaged transverse differential A(t, w)
  Mat2 a_matrix(double t, const Vec2& w) const;

  // (W^t, W^r, W^theta) at a cylinder point; valid down to and including r = 0
  Vec3 field(double t, double r, double theta) const;

  // boundary angular field b(t, theta) on the blown-up torus
  double core_field(double t, double theta) const;

  const geometry::TubularFrame& frame() const { return *frame_; }

 private:
  const geometry::TubularFrame* frame_;
  std::vector<double> nodes_;    // Gauss-Legendre nodes on [0, 1]
  std::vector<double> weights_;
};

}  // namespace sos::boundary
