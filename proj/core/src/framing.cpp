#include "sos/boundary/framing.hpp"

#include "sos/common/types.hpp"

namespace sos::boundary {

double rho_y(double p, double q, double period, double rho_theta) {
  return period / kTwoPi * (p + q * rho_theta);
}

Framing reframe(double p, double q, double period, double rho_theta, int m) {
  Framing out;
  out.p = p - kTwoPi * m * q / period;
  out.rho_theta = rho_theta + kTwoPi * m / period;
  return out;
}

}  // namespace sos::boundary
