#pragma once

#include <array>
#include <string>
#include <vector>

#include "sos/common/ode.hpp"
#include "sos/geometry/scenario.hpp"
#include "sos/geometry/tubular.hpp"

namespace sos::orbit {

struct RefineOptions {
  double tol = 1e-8;             // residual threshold on |phi_T(p) - p|
  int max_iterations = 50;
  double damping = 0.5;          // backtracking factor when the residual grows
  double fd_step = 1e-7;
  double primitive_tol = 1e-6;   // phi_{T/k}(p) must move at least this far
  int primitive_max_divisor = 6;
  OdeOptions ode{.tol = 1e-9, .max_step = 0.05};
};

struct PeriodicOrbit {
  int component = 0;
  double period = 0.0;
  StateVec anchor;               // converged point on the orbit
  double residual = 0.0;         // scenario distance phi_T(anchor) -> anchor
  int iterations = 0;
  std::vector<StateVec> samples; // uniform-time samples along the orbit
};

// Newton shooting on a transverse hyperplane through the seed, with the
// return time located by a plane-crossing search near the period guess.
// Throws RefinementError when no return is found, the iteration stalls above
// tolerance, or the converged period is not primitive (an integer divisor
// T/k, k <= primitive_max_divisor, already closes up).
PeriodicOrbit refine_periodic_orbit(const geometry::Scenario& s, const StateVec& seed,
                                    double period_guess, const RefineOptions& opt = {},
                                    int n_samples = 256);

enum class OrbitClass { hyperbolic, elliptic, parabolic };
std::string to_string(OrbitClass c);

struct TransverseBlock {
  int component = 0;
  double period = 0.0;
  std::vector<Mat2> a2;          // A2(t_k), t_k = k T / n, k = 0..n-1
  Mat2 monodromy;                // fundamental solution of M' = A2(t) M at T
  std::array<Cplx, 2> multipliers;
  double liouville_defect = 0.0; // |det M - exp(int tr A2 dt)|
  double recheck_error = 0.0;    // disagreement with a coarser re-integration
};

// Samples the core linearization A2(t) = D_w Z(t, 0) from the tubular frame
// and integrates the transverse monodromy. The periodic linear system is
// integrated twice at different resolutions; a mismatch above 1e-6 throws.
TransverseBlock transverse_block(const geometry::Scenario& s, const PeriodicOrbit& orbit,
                                 const geometry::TubularFrame& frame, int n_samples = 256);

// Multiplier classification with tolerance band `tol` around the unit circle:
// hyperbolic when both multipliers are real and off the unit circle, elliptic
// when both sit on the unit circle away from +-1, parabolic otherwise.
OrbitClass classify_orbit(const std::array<Cplx, 2>& multipliers, double tol = 1e-6);

}  // namespace sos::orbit
