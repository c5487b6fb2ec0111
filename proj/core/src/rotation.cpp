#include "sos/boundary/rotation.hpp"

#include <cmath>

#include "sos/common/ode.hpp"
#include "sos/common/parallel.hpp"

namespace sos::boundary {

RotationEstimate estimate_rotation(double period,
                                   const std::function<double(double, double)>& b,
                                   const RotationOptions& opt) {
  if (!(period > 0.0)) throw std::invalid_argument("estimate_rotation: period <= 0");
  if (opt.n_seeds < 1) throw std::invalid_argument("estimate_rotation: need >= 1 seed");
  long jmax = 0;
  while ((1L << (jmax + 1)) <= opt.horizon_mult) ++jmax;
  if ((1L << jmax) != opt.horizon_mult)
    throw std::invalid_argument("estimate_rotation: horizon_mult must be a power of two");
  long jmin = 0;
  while ((1L << jmin) < 2 * opt.skip_mult) ++jmin;
  if (jmin > jmax)
    throw std::invalid_argument("estimate_rotation: horizon shorter than twice the skip");

  OdeOptions ode;
  ode.tol = opt.tol;
  ode.per_unit_time = true;
  ode.max_step = 0.25 * period;

  const double t_skip = opt.skip_mult * period;
  const int n_windows = static_cast<int>(jmax - jmin + 1);

  RotationEstimate out;
  out.windows.resize(static_cast<std::size_t>(opt.n_seeds) * n_windows);

  OdeRhs rhs = [&](double t, const StateVec& y, StateVec& dy) { dy[0] = b(t, y[0]); };

  parallel_for(static_cast<std::size_t>(opt.n_seeds), [&](std::size_t k) {
    StateVec y(1);
    y << kTwoPi * static_cast<double>(k) / opt.n_seeds;
    double t = 0.0;
    double wind = 0.0;  // angle removed by rebasing, added back at checkpoints

    // The lift grows without bound, which would degrade the integrator's
    // relative error control; rebase theta by whole turns every few dozen
    // periods and track the removed winding separately.
    auto advance_to = [&](double target) {
      while (t < target) {
        double seg_end = std::min(t + 64.0 * period, target);
        OdeResult r = integrate_rk45(rhs, t, y, seg_end, ode);
        t = seg_end;
        y = r.y;
        double turns = std::floor(y[0] / kTwoPi);
        if (turns != 0.0) {
          double shift = kTwoPi * turns;
          y[0] -= shift;
          wind += shift;
        }
      }
    };

    advance_to(t_skip);
    const double theta_skip = y[0] + wind;
    for (long j = jmin; j <= jmax; ++j) {
      advance_to(period * static_cast<double>(1L << j));
      WindowEstimate& w = out.windows[k * n_windows + (j - jmin)];
      w.seed = static_cast<int>(k);
      w.mult = 1L << j;
      w.value = (y[0] + wind - theta_skip) / (t - t_skip);
    }
  });

  double sum = 0.0;
  for (int k = 0; k < opt.n_seeds; ++k)
    sum += out.windows[static_cast<std::size_t>(k) * n_windows + (n_windows - 1)].value;
  out.value = sum / opt.n_seeds;

  const int tail = std::min(3, n_windows);
  for (int k = 0; k < opt.n_seeds; ++k)
    for (int j = n_windows - tail; j < n_windows; ++j) {
      double v = out.windows[static_cast<std::size_t>(k) * n_windows + j].value;
      out.error_bound = std::max(out.error_bound, std::abs(v - out.value));
    }
  return out;
}

RotationEstimate estimate_rotation(const BoundaryTorusField& field,
                                   const RotationOptions& opt) {
  return estimate_rotation(
      field.period(), [&](double t, double theta) { return field.eval(t, theta); }, opt);
}

}  // namespace sos::boundary
