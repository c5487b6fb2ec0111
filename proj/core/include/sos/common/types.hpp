#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace sos {

// State vectors stay small (3 for angular charts, 4 for the 3-sphere, 6 for
// the unit tangent bundle), so cap the compile-time size and avoid heap
// traffic in the integrator hot loops.
using StateVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;
using MatX = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy: domain_error for points outside a chart/atlas, runtime_error
// subtypes for numerical procedures that fail to meet their contract.
struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RefinementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExtractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wraps x into [0, period).
inline double wrap_into(double x, double period) {
  double y = x - period * std::floor(x / period);
  if (y >= period) y -= period;  // guard against floor rounding at the seam
  if (y < 0.0) y += period;
  return y;
}

// Signed distance from a to b on a circle of the given period, in (-p/2, p/2].
inline double circle_diff(double a, double b, double period) {
  double d = wrap_into(a - b, period);
  if (d > 0.5 * period) d -= period;
  return d;
}

}  // namespace sos
