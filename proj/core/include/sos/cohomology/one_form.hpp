#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sos/common/types.hpp"
#include "sos/geometry/scenario.hpp"

namespace sos::cohomology {

// Exact-differential correction to a discrete one-form.  Both callables take
// a chart point; the gradient is with respect to the chart coordinates.
struct Potential {
  std::function<double(const StateVec&)> value;
  std::function<StateVec(const StateVec&)> gradient;
};

// Closed one-form represented by constant coefficients in a canonical chart
// plus an optional potential.  Closedness is built in: the fixed part has
// constant chart coefficients and the correction is an exact differential.
//
// Kinds:
//   flat3      a y1 dx1 + y2 dx2 + y3 dx3 on the unit 3-torus
//   tube       p dt + q dtheta on a solid-torus chart (t, r, theta)
//   fibration  eps/2pi times the angular form of the second complex
//              coordinate on the unit 3-sphere (ambient states in R^4)
class GridOneForm {
 public:
  enum class Kind { flat3, tube, fibration };

  static GridOneForm flat3(const Vec3& y);
  static GridOneForm tube(double p, double q, double period);
  static GridOneForm fibration(int eps);

  // Returns a copy carrying the exact correction dg.  Tube potentials must
  // vanish on the collar r < 0.2 so the core coefficients stay exact.
  GridOneForm with_potential(Potential pot) const;

  Kind kind() const { return kind_; }
  bool has_potential() const { return potential_.has_value(); }
  const std::optional<Potential>& potential() const { return potential_; }
  double period() const { return period_; }

  // Pointwise covector in the coordinates the scenario states use.
  StateVec covector(const StateVec& x) const;

  // Constant coefficients of the fixed part in the canonical chart
  // (flat3: x chart, tube: (t, r, theta), fibration: (s, nu, alpha)).
  Vec3 chart_covector() const;

  // beta(X) at a state: covector paired with the scenario field.
  double beta_of_X(const geometry::Scenario& s, const StateVec& x) const;

  // Pairing with a densely sampled closed loop.  The final sample must
  // return to the first (up to deck translations) within 1e-8, and
  // consecutive samples must stay well inside half a chart period.
  double pair_loop(const std::vector<StateVec>& loop) const;

  // Sampled sup of |beta(X)| over the scenario domain.
  double sup_beta_of_X(const geometry::Scenario& s, int per_axis = 9) const;

  // Worst sampled plaquette circulation per unit perimeter; zero up to
  // floating-point cancellation by construction.
  double closedness_residual() const;

  // Restriction to the boundary torus as coefficients of (dt, dtheta).
  struct TorusRestriction {
    double p;
    double q;
  };
  TorusRestriction boundary_restriction() const;

 private:
  GridOneForm() = default;
  StateVec segment_delta(const StateVec& a, const StateVec& b) const;
  bool loop_closed(const StateVec& first, const StateVec& last) const;

  Kind kind_ = Kind::flat3;
  Vec3 flat_ = Vec3::Zero();
  double p_ = 0.0;
  double q_ = 0.0;
  double period_ = kTwoPi;
  int eps_ = 1;
  std::optional<Potential> potential_;
};

}  // namespace sos::cohomology
