#pragma once

#include <functional>

#include "sos/boundary/torus_field.hpp"
#include "sos/common/types.hpp"

namespace sos::measures {

// Invariant probability measures on a boundary torus carrying the field
// (1, b(t, theta)): the normalized area (invariant iff b is rigid) and the
// uniform measure on an invariant circle {theta = theta0} (invariant iff
// b(., theta0) vanishes).
class TorusMeasure {
 public:
  static TorusMeasure area();
  static TorusMeasure circle(double theta0);

  bool is_area() const { return kind_ == Kind::area; }
  double theta0() const { return theta0_; }

  double integrate(const boundary::BoundaryTorusField& field,
                   const std::function<double(double, double)>& f,
                   int n = 256) const;

  // Worst pairing of the measure with dg(X) over a fixed family of torus
  // test functions; zero (to quadrature) exactly for invariant measures.
  double invariance_residual(const boundary::BoundaryTorusField& field,
                             int n = 256) const;

 private:
  enum class Kind { area, circle };
  Kind kind_ = Kind::area;
  double theta0_ = 0.0;
};

struct BoundaryPairing {
  double value = 0.0;       // (T / 2 pi) q int b dmu
  double rho_y_check = 0.0; // same quantity through the rotation-number route
  double mismatch = 0.0;
};

// Pairing of the class restriction q dtheta with an invariant measure on the
// boundary torus, cross-checked against the rotation-number formula.  Throws
// ClassError when the supplied measure is not invariant (residual > 1e-8).
BoundaryPairing boundary_measure_pairing(const boundary::BoundaryTorusField& field,
                                         const TorusMeasure& mu, double q);

}  // namespace sos::measures
