#include "sos/measures/birkhoff.hpp"

#include <cmath>
#include <stdexcept>

#include "sos/common/ode.hpp"

namespace sos::measures {

BirkhoffEstimate birkhoff_average(const geometry::Scenario& s,
                                  const cohomology::GridOneForm& beta,
                                  const StateVec& p0, double horizon,
                                  double tol) {
  const double t0 = s.characteristic_period();
  if (!(horizon >= 100.0 * t0))
    throw std::domain_error("birkhoff_average: horizon shorter than 100 periods");

  const int d = s.state_dim();
  OdeRhs rhs = [&](double, const StateVec& y, StateVec& dy) {
    const StateVec x = y.head(d);
    const StateVec f = s.field(x);
    dy.resize(d + 1);
    dy.head(d) = f;
    dy[d] = beta.covector(x).dot(f);
  };
  Projector proj;
  if (s.has_constraint())
    proj = [&s, d](StateVec& y) {
      StateVec x = y.head(d);
      s.project(x);
      y.head(d) = x;
    };

  OdeOptions opt;
  opt.tol = tol;
  opt.per_unit_time = true;
  opt.max_step = 0.25 * t0;

  StateVec y(d + 1);
  y.head(d) = p0;
  y[d] = 0.0;

  BirkhoffEstimate est;
  double t = 0.0;
  try {
    for (int m = 3; m >= 0; --m) {
      const double target = horizon / (1 << m);
      auto r = integrate_rk45(rhs, t, y, target, opt, proj);
      t = r.t;
      y = r.y;
      est.window_values.push_back(y[d] / t);
    }
  } catch (const std::domain_error& e) {
    throw IntegrationError(std::string("birkhoff_average: trajectory escaped (") +
                           e.what() + ")");
  }
  est.value = est.window_values.back();
  est.spread = 0.0;
  for (double w : est.window_values)
    est.spread = std::max(est.spread, std::abs(w - est.value));
  return est;
}

}  // namespace sos::measures
