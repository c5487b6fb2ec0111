#include "sos/geometry/scenario.hpp"

#include <cmath>

#include "sos/geometry/tubular.hpp"

namespace sos::geometry {

std::unique_ptr<TubularFrame> Scenario::tubular_frame(int) const {
  throw ClassError(name() + ": no tubular frames are defined for this scenario");
}

MatX fd_jacobian(const Scenario& s, const StateVec& p, double h) {
  const int n = s.state_dim();
  MatX j(n, n);
  StateVec pp = p, pm = p;
  for (int c = 0; c < n; ++c) {
    pp[c] = p[c] + h;
    pm[c] = p[c] - h;
    StateVec fp = s.field(pp);
    StateVec fm = s.field(pm);
    j.col(c) = (fp - fm) / (2.0 * h);
    pp[c] = p[c];
    pm[c] = p[c];
  }
  return j;
}

namespace {

// Wrap an angular coordinate into [0, period), but only once it has drifted
// more than 5% past the chart overlap; integration then stays in one chart
// representative for as long as possible (transition consistency is a tested
// invariant, not an assumption).
inline double lazy_wrap(double x, double period) {
  if (x < -0.05 * period || x > 1.05 * period) return wrap_into(x, period);
  return x;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

inline double poly_eval_derivative(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) v = v * x + k * c[k];
  return v;
}

}  // namespace

// ---------------------------------------------------------------- T3Linear

StateVec T3Linear::field(const StateVec& p) const {
  if (p.size() != 3) throw std::domain_error("t3_linear: state must be 3-dimensional");
  StateVec v(3);
  v << omega_[0], omega_[1], omega_[2];
  return v;
}

MatX T3Linear::jacobian(const StateVec&) const { return MatX::Zero(3, 3); }

StateVec T3Linear::wrap(const StateVec& p) const {
  StateVec q = p;
  for (int i = 0; i < 3; ++i) q[i] = lazy_wrap(p[i], 1.0);
  return q;
}

double T3Linear::distance(const StateVec& a, const StateVec& b) const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    double d = circle_diff(a[i], b[i], 1.0);
    s += d * d;
  }
  return std::sqrt(s);
}

StateVec T3Linear::angular_periods() const {
  StateVec z(3);
  z << 1.0, 1.0, 1.0;
  return z;
}

double T3Linear::characteristic_period() const {
  double w = omega_.cwiseAbs().maxCoeff();
  return (w > 0.0) ? 1.0 / w : 1.0;
}

// --------------------------------------------------------- SolidTorusModel

SolidTorusModel::SolidTorusModel(std::vector<double> f_coeffs, double period)
    : f_(std::move(f_coeffs)), period_(period) {
  if (f_.empty()) throw std::invalid_argument("solid_torus: f needs at least one coefficient");
  if (!(period > 0.0)) throw std::invalid_argument("solid_torus: period must be positive");
}

double SolidTorusModel::f(double r) const { return poly_eval(f_, r); }
double SolidTorusModel::df(double r) const { return poly_eval_derivative(f_, r); }

StateVec SolidTorusModel::field(const StateVec& p) const {
  if (!in_domain(p))
    throw std::domain_error("solid_torus: point outside the chart (r not in [0,1])");
  StateVec v(3);
  v << 1.0, 0.0, f(p[1]);
  return v;
}

MatX SolidTorusModel::jacobian(const StateVec& p) const {
  MatX j = MatX::Zero(3, 3);
  j(2, 1) = df(p[1]);
  return j;
}

bool SolidTorusModel::in_domain(const StateVec& p) const {
  return p.size() == 3 && p[1] >= -1e-12 && p[1] <= 1.0 + 1e-9;
}

StateVec SolidTorusModel::wrap(const StateVec& p) const {
  StateVec q = p;
  q[0] = lazy_wrap(p[0], period_);
  q[2] = lazy_wrap(p[2], kTwoPi);
  return q;
}

double SolidTorusModel::distance(const StateVec& a, const StateVec& b) const {
  double dt = circle_diff(a[0], b[0], period_);
  // transverse part compared in the disk, where (r, theta) is polar
  double ax = a[1] * std::cos(a[2]), ay = a[1] * std::sin(a[2]);
  double bx = b[1] * std::cos(b[2]), by = b[1] * std::sin(b[2]);
  return std::sqrt(dt * dt + (ax - bx) * (ax - bx) + (ay - by) * (ay - by));
}

StateVec SolidTorusModel::angular_periods() const {
  StateVec z(3);
  z << period_, 0.0, kTwoPi;
  return z;
}

std::vector<LinkComponent> SolidTorusModel::link() const {
  LinkComponent c;
  c.index = 0;
  c.seed = StateVec(3);
  c.seed << 0.0, 0.01, 0.3;
  c.period_guess = period_;
  c.label = "core";
  return {c};
}

// --------------------------------------------------------- SolidTorusLinear

SolidTorusLinear::SolidTorusLinear(const Mat2& a2, Cplx kappa, double period)
    : a2_(a2), kappa_(kappa), period_(period) {
  if (!(period > 0.0)) throw std::invalid_argument("solid_torus_linear: period must be positive");
}

StateVec SolidTorusLinear::field(const StateVec& p) const {
  if (!in_domain(p))
    throw std::domain_error("solid_torus_linear: point outside the chart (r not in [0,1])");
  const double r = p[1], th = p[2];
  const double ct = std::cos(th), st = std::sin(th);
  // e^{-i theta} A2 e^{i theta} projected on the radial/angular directions
  Vec2 e(ct, st), ie(-st, ct);
  Vec2 a2e = a2_ * e;
  const double g = a2e.dot(e);    // radial rate / r from the linear part
  const double b = a2e.dot(ie);   // angular rate from the linear part
  // kappa w^2 contributes r^2 Re(kappa e^{i theta}) radially and
  // r Im(kappa e^{i theta}) angularly
  const double ck = kappa_.real() * ct - kappa_.imag() * st;  // Re(kappa e^{i th})
  const double sk = kappa_.real() * st + kappa_.imag() * ct;  // Im(kappa e^{i th})
  StateVec v(3);
  v << 1.0, r * g + r * r * ck, b + r * sk;
  return v;
}

MatX SolidTorusLinear::jacobian(const StateVec& p) const {
  const double r = p[1], th = p[2];
  const double ct = std::cos(th), st = std::sin(th);
  Vec2 e(ct, st), ie(-st, ct);
  Vec2 a2e = a2_ * e, a2ie = a2_ * ie;
  const double g = a2e.dot(e);
  const double b = a2e.dot(ie);
  const double gp = a2ie.dot(e) + a2e.dot(ie);   // d/dtheta of g
  const double bp = a2ie.dot(ie) - a2e.dot(e);   // d/dtheta of b
  const double ck = kappa_.real() * ct - kappa_.imag() * st;
  const double sk = kappa_.real() * st + kappa_.imag() * ct;
  MatX j = MatX::Zero(3, 3);
  j(1, 1) = g + 2.0 * r * ck;
  j(1, 2) = r * gp - r * r * sk;
  j(2, 1) = sk;
  j(2, 2) = bp + r * ck;
  (void)b;
  return j;
}

bool SolidTorusLinear::in_domain(const StateVec& p) const {
  return p.size() == 3 && p[1] >= -1e-12 && p[1] <= 1.0 + 1e-9;
}

StateVec SolidTorusLinear::wrap(const StateVec& p) const {
  StateVec q = p;
  q[0] = lazy_wrap(p[0], period_);
  q[2] = lazy_wrap(p[2], kTwoPi);
  return q;
}

double SolidTorusLinear::distance(const StateVec& a, const StateVec& b) const {
  double dt = circle_diff(a[0], b[0], period_);
  double ax = a[1] * std::cos(a[2]), ay = a[1] * std::sin(a[2]);
  double bx = b[1] * std::cos(b[2]), by = b[1] * std::sin(b[2]);
  return std::sqrt(dt * dt + (ax - bx) * (ax - bx) + (ay - by) * (ay - by));
}

StateVec SolidTorusLinear::angular_periods() const {
  StateVec z(3);
  z << period_, 0.0, kTwoPi;
  return z;
}

std::vector<LinkComponent> SolidTorusLinear::link() const {
  LinkComponent c;
  c.index = 0;
  c.seed = StateVec(3);
  c.seed << 0.0, 0.0, 0.0;
  c.period_guess = period_;
  c.label = "core";
  return {c};
}

// ------------------------------------------------------------------ HopfS3

StateVec HopfS3::field(const StateVec& p) const {
  if (p.size() != 4) throw std::domain_error("hopf_s3: state must be 4-dimensional");
  StateVec v(4);
  v << -p[1], p[0], -p[3], p[2];
  return v;
}

MatX HopfS3::jacobian(const StateVec&) const {
  MatX j = MatX::Zero(4, 4);
  j(0, 1) = -1.0;
  j(1, 0) = 1.0;
  j(2, 3) = -1.0;
  j(3, 2) = 1.0;
  return j;
}

bool HopfS3::in_domain(const StateVec& p) const {
  return p.size() == 4 && std::abs(p.norm() - 1.0) < 0.05;
}

void HopfS3::project(StateVec& p) const { p /= p.norm(); }

double HopfS3::distance(const StateVec& a, const StateVec& b) const { return (a - b).norm(); }

std::vector<LinkComponent> HopfS3::link() const {
  LinkComponent c;
  c.index = 0;
  c.seed = StateVec(4);
  double rho = 0.01;
  c.seed << std::sqrt(1.0 - rho * rho), 0.0, rho, 0.0;
  c.period_guess = kTwoPi;
  c.label = "fiber";
  return {c};
}

// -------------------------------------------------------------- GeodesicS2

StateVec GeodesicS2::field(const StateVec& p) const {
  if (p.size() != 6) throw std::domain_error("geodesic_s2: state must be 6-dimensional");
  StateVec v(6);
  v << p[3], p[4], p[5], -p[0], -p[1], -p[2];
  return v;
}

MatX GeodesicS2::jacobian(const StateVec&) const {
  MatX j = MatX::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    j(i, 3 + i) = 1.0;
    j(3 + i, i) = -1.0;
  }
  return j;
}

bool GeodesicS2::in_domain(const StateVec& p) const {
  if (p.size() != 6) return false;
  Vec3 x = p.head<3>(), v = p.tail<3>();
  return std::abs(x.norm() - 1.0) < 0.05 && std::abs(v.norm() - 1.0) < 0.05 &&
         std::abs(x.normalized().dot(v.normalized())) < 0.05;
}

void GeodesicS2::project(StateVec& p) const {
  Vec3 x = p.head<3>(), v = p.tail<3>();
  x.normalize();
  v -= x.dot(v) * x;
  v.normalize();
  p.head<3>() = x;
  p.tail<3>() = v;
}

double GeodesicS2::distance(const StateVec& a, const StateVec& b) const { return (a - b).norm(); }

std::vector<LinkComponent> GeodesicS2::link() const {
  std::vector<LinkComponent> out(2);
  out[0].index = 0;
  out[0].seed = StateVec(6);
  out[0].seed << 1, 0, 0, 0, 1, 0;
  out[0].period_guess = kTwoPi;
  out[0].label = "equator+";
  out[1].index = 1;
  out[1].seed = StateVec(6);
  out[1].seed << 1, 0, 0, 0, -1, 0;
  out[1].period_guess = kTwoPi;
  out[1].label = "equator-";
  return out;
}

}  // namespace sos::geometry
