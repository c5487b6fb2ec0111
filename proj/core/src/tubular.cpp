#include "sos/geometry/tubular.hpp"

#include <cmath>

#include "sos/geometry/scenario.hpp"

namespace sos::geometry {

Mat2 TubularFrame::transverse_jacobian(double t, double x, double y) const {
  // Richardson-extrapolated central differences: O(h^4), which keeps the
  // transverse block accurate to ~1e-10 for the smooth model fields.
  const double h = 1e-4 * std::max(1.0, std::hypot(x, y));
  auto d = [&](double step) {
    Mat2 m;
    Vec3 fx_p = tube_field(t, x + step, y), fx_m = tube_field(t, x - step, y);
    Vec3 fy_p = tube_field(t, x, y + step), fy_m = tube_field(t, x, y - step);
    m(0, 0) = (fx_p[1] - fx_m[1]) / (2 * step);
    m(1, 0) = (fx_p[2] - fx_m[2]) / (2 * step);
    m(0, 1) = (fy_p[1] - fy_m[1]) / (2 * step);
    m(1, 1) = (fy_p[2] - fy_m[2]) / (2 * step);
    return m;
  };
  Mat2 dh = d(h), dh2 = d(0.5 * h);
  return (4.0 * dh2 - dh) / 3.0;
}

namespace {

// Native frame for the solid-torus models: the scenario chart already is the
// aligned tube chart, so the maps are identity up to angular wrapping.
class NativeTubeFrame : public TubularFrame {
 public:
  NativeTubeFrame(const Scenario* owner, double period)
      : TubularFrame(0, period), owner_(owner) {}

  Vec3 to_tube(const StateVec& p) const override {
    return Vec3(wrap_into(p[0], period()), p[1], p[1] > 0.0 ? wrap_into(p[2], kTwoPi) : 0.0);
  }

  StateVec from_tube(double t, double r, double theta) const override {
    StateVec p(3);
    p << wrap_into(t, period()), r, wrap_into(theta, kTwoPi);
    return p;
  }

  Vec3 tube_field(double t, double x, double y) const override {
    const double r = std::hypot(x, y);
    StateVec p(3);
    p << wrap_into(t, period()), r, (r > 0.0) ? std::atan2(y, x) : 0.0;
    StateVec v = owner_->field(p);
    // polar rates back to cartesian: w' = (r' cos - r th' sin, r' sin + r th' cos)
    const double c = (r > 0.0) ? x / r : 1.0;
    const double s = (r > 0.0) ? y / r : 0.0;
    return Vec3(v[0], v[1] * c - r * v[2] * s, v[1] * s + r * v[2] * c);
  }

 private:
  const Scenario* owner_;
};

// Analytic override for the transversally affine model: D_w Z = A2 + 2 kappa w
// (complex multiplication written as a real 2x2 block).
class AffineTubeFrame : public NativeTubeFrame {
 public:
  AffineTubeFrame(const SolidTorusLinear* owner)
      : NativeTubeFrame(owner, owner->period()), a2_(owner->a2()), kappa_(owner->kappa()) {}

  Vec3 tube_field(double t, double x, double y) const override {
    Cplx w(x, y);
    Cplx dw = kappa_ * w * w;
    Vec2 lin = a2_ * Vec2(x, y);
    (void)t;
    return Vec3(1.0, lin[0] + dw.real(), lin[1] + dw.imag());
  }

  Mat2 transverse_jacobian(double, double x, double y) const override {
    Cplx two_kw = 2.0 * kappa_ * Cplx(x, y);
    Mat2 m = a2_;
    m(0, 0) += two_kw.real();
    m(0, 1) -= two_kw.imag();
    m(1, 0) += two_kw.imag();
    m(1, 1) += two_kw.real();
    return m;
  }

 private:
  Mat2 a2_;
  Cplx kappa_;
};

// Aligned frame around the Hopf fiber through (1, 0): t = arg z1 and
// theta = arg z2. The {theta = const} pushoff is the Seifert framing (it
// bounds inside the page {arg z2 = const}), so its pairing with the
// distinguished class vanishes; the fibration framing theta = arg z2 - arg z1
// would not be aligned (its pushoff is a neighboring fiber, linking number 1).
class HopfTubeFrame : public TubularFrame {
 public:
  explicit HopfTubeFrame(double rho_max) : TubularFrame(0, kTwoPi), rho_max_(rho_max) {}

  Vec3 to_tube(const StateVec& p) const override {
    const double rho = std::hypot(p[2], p[3]);
    if (rho > rho_max_ * (1.0 + 1e-9))
      throw std::domain_error("hopf_s3: point outside the tubular neighborhood");
    const double t = wrap_into(std::atan2(p[1], p[0]), kTwoPi);
    const double r = rho / rho_max_;
    const double theta = (rho > 0.0) ? wrap_into(std::atan2(p[3], p[2]), kTwoPi) : 0.0;
    return Vec3(t, r, theta);
  }

  StateVec from_tube(double t, double r, double theta) const override {
    const double rho = rho_max_ * r;
    const double a = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    StateVec p(4);
    p << a * std::cos(t), a * std::sin(t), rho * std::cos(theta), rho * std::sin(theta);
    return p;
  }

  // In tube coordinates the flow is (t, w) -> (t + s, e^{is} w), exactly.
  Vec3 tube_field(double, double x, double y) const override { return Vec3(1.0, -y, x); }

  Mat2 transverse_jacobian(double, double, double) const override {
    Mat2 m;
    m << 0.0, -1.0, 1.0, 0.0;
    return m;
  }

 private:
  double rho_max_;
};

}  // namespace

std::unique_ptr<TubularFrame> SolidTorusModel::tubular_frame(int component) const {
  if (component != 0) throw ClassError("solid_torus: link has a single component");
  return std::make_unique<NativeTubeFrame>(this, period_);
}

std::unique_ptr<TubularFrame> SolidTorusLinear::tubular_frame(int component) const {
  if (component != 0) throw ClassError("solid_torus_linear: link has a single component");
  return std::make_unique<AffineTubeFrame>(this);
}

std::unique_ptr<TubularFrame> HopfS3::tubular_frame(int component) const {
  if (component != 0) throw ClassError("hopf_s3: link has a single component");
  return std::make_unique<HopfTubeFrame>(rho_max_);
}

}  // namespace sos::geometry
