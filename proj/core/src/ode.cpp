#include "sos/common/ode.hpp"

#include <algorithm>
#include <cmath>

namespace sos {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// y1 uses the 5th-order weights (b7 = 0); the embedded 4th-order solution
// difference gives the error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_rk45(const OdeRhs& f, double t0, const StateVec& y0, double t1,
                         const OdeOptions& opt, const Projector& project,
                         const StepObserver& observe) {
  OdeResult out;
  out.t = t0;
  out.y = y0;
  if (t1 == t0) return out;

  const double dir = (t1 > t0) ? 1.0 : -1.0;
  const int n = static_cast<int>(y0.size());
  StateVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), yerr(n);

  double t = t0;
  StateVec y = y0;
  f(t, y, k1);
  double h = dir * std::min(opt.max_step, std::abs(t1 - t0));

  while (dir * (t1 - t) > 0.0) {
    if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;
    if (++out.steps > opt.max_steps)
      throw IntegrationError("integrate_rk45: step budget exhausted");

    ytmp = y + h * (a21 * k1);
    f(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, ynew, k7);
    yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    const double tol_abs = opt.per_unit_time ? opt.tol * std::abs(h) : opt.tol;
    for (int i = 0; i < n; ++i) {
      double sc = tol_abs + opt.tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double e = yerr[i] / sc;
      err += e * e;
    }
    err = std::sqrt(err / n);

    if (err <= 1.0) {
      double t_new = t + h;
      if (project) project(ynew);
      if (observe && !observe(t, y, t_new, ynew)) {
        out.t = t_new;
        out.y = ynew;
        out.observer_stop = true;
        return out;
      }
      t = t_new;
      y = ynew;
      k1 = k7;  // FSAL
      if (project) f(t, y, k1);  // projection invalidates the stored slope
    }

    double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
    if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
    if (std::abs(h) < opt.min_step) {
      if (dir * (t1 - t) <= opt.min_step) break;
      throw IntegrationError("integrate_rk45: step size underflow at t=" + std::to_string(t));
    }
  }

  out.t = t;
  out.y = y;
  return out;
}

StateVec rk4_step(const OdeRhs& f, double t, const StateVec& y, double h) {
  const int n = static_cast<int>(y.size());
  StateVec k1(n), k2(n), k3(n), k4(n), tmp(n);
  f(t, y, k1);
  tmp = y + 0.5 * h * k1;
  f(t + 0.5 * h, tmp, k2);
  tmp = y + 0.5 * h * k2;
  f(t + 0.5 * h, tmp, k3);
  tmp = y + h * k3;
  f(t + h, tmp, k4);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

OdeResult integrate_rk4(const OdeRhs& f, double t0, const StateVec& y0, double t1,
                        long n_steps, const Projector& project) {
  OdeResult out;
  double h = (t1 - t0) / static_cast<double>(n_steps);
  StateVec y = y0;
  double t = t0;
  for (long i = 0; i < n_steps; ++i) {
    y = rk4_step(f, t, y, h);
    if (project) project(y);
    t = t0 + (i + 1) * h;
  }
  out.t = t1;
  out.y = y;
  out.steps = n_steps;
  return out;
}

}  // namespace sos
