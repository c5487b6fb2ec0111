#pragma once

namespace sos::boundary {

// Rotation number of a boundary orbit of period T against a cohomology class
// restricting to p dt + q dtheta on its blown-up torus, given the angular
// drift rate rho_theta of the torus field:
//
//     rho_y = (T / 2 pi) * (p + q * rho_theta)
double rho_y(double p, double q, double period, double rho_theta);

// Effect of twisting the tubular frame by m full turns per period. The chart
// data (p, rho_theta) both change; rho_y is framing-invariant.
struct Framing {
  double p = 0.0;
  double rho_theta = 0.0;
};

Framing reframe(double p, double q, double period, double rho_theta, int m);

}  // namespace sos::boundary
