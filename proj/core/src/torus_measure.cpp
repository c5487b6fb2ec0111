#include "sos/measures/torus_measure.hpp"

#include <cmath>
#include <vector>

#include "sos/boundary/framing.hpp"
#include "sos/boundary/rotation.hpp"

namespace sos::measures {

using boundary::BoundaryTorusField;

TorusMeasure TorusMeasure::area() {
  TorusMeasure m;
  m.kind_ = Kind::area;
  return m;
}

TorusMeasure TorusMeasure::circle(double theta0) {
  TorusMeasure m;
  m.kind_ = Kind::circle;
  m.theta0_ = wrap_into(theta0, kTwoPi);
  return m;
}

double TorusMeasure::integrate(const BoundaryTorusField& field,
                               const std::function<double(double, double)>& f,
                               int n) const {
  const double period = field.period();
  double sum = 0.0;
  if (kind_ == Kind::area) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sum += f(period * (i + 0.5) / n, kTwoPi * (j + 0.5) / n);
    return sum / (static_cast<double>(n) * n);
  }
  for (int i = 0; i < n; ++i) sum += f(period * (i + 0.5) / n, theta0_);
  return sum / n;
}

double TorusMeasure::invariance_residual(const BoundaryTorusField& field,
                                         int n) const {
  // torus test family {1, cos wt, sin wt} x {1, cos th, sin th, cos 2th,
  // sin 2th} minus the constant; dg(X) with X = (1, b)
  const double w = kTwoPi / field.period();
  struct F1 {
    std::function<double(double)> f, df;
  };
  std::vector<F1> ft = {
      {[](double) { return 1.0; }, [](double) { return 0.0; }},
      {[w](double t) { return std::cos(w * t); },
       [w](double t) { return -w * std::sin(w * t); }},
      {[w](double t) { return std::sin(w * t); },
       [w](double t) { return w * std::cos(w * t); }}};
  std::vector<F1> fth = {
      {[](double) { return 1.0; }, [](double) { return 0.0; }},
      {[](double u) { return std::cos(u); }, [](double u) { return -std::sin(u); }},
      {[](double u) { return std::sin(u); }, [](double u) { return std::cos(u); }},
      {[](double u) { return std::cos(2 * u); },
       [](double u) { return -2 * std::sin(2 * u); }},
      {[](double u) { return std::sin(2 * u); },
       [](double u) { return 2 * std::cos(2 * u); }}};
  double worst = 0.0;
  for (std::size_t a = 0; a < ft.size(); ++a)
    for (std::size_t b = 0; b < fth.size(); ++b) {
      if (a == 0 && b == 0) continue;
      auto dg_x = [&](double t, double th) {
        return ft[a].df(t) * fth[b].f(th) +
               field.eval(t, th) * ft[a].f(t) * fth[b].df(th);
      };
      worst = std::max(worst, std::abs(integrate(field, dg_x, n)));
    }
  return worst;
}

BoundaryPairing boundary_measure_pairing(const BoundaryTorusField& field,
                                         const TorusMeasure& mu, double q) {
  const double res = mu.invariance_residual(field);
  if (res > 1e-8)
    throw ClassError("boundary pairing: measure is not invariant (residual " +
                     std::to_string(res) + ")");
  const double period = field.period();
  const double mean_b =
      mu.integrate(field, [&](double t, double th) { return field.eval(t, th); });

  BoundaryPairing out;
  out.value = period / kTwoPi * q * mean_b;

  double rho_theta;
  if (mu.is_area()) {
    rho_theta = boundary::estimate_rotation(field).value;
  } else {
    // rotation number of the invariant circle orbit itself
    rho_theta = mu.integrate(field, [&](double t, double th) {
      return field.eval(t, th);
    });
  }
  out.rho_y_check = boundary::rho_y(0.0, q, period, rho_theta);
  out.mismatch = std::abs(out.value - out.rho_y_check);
  return out;
}

}  // namespace sos::measures
