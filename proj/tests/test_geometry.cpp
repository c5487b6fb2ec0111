#include "doctest.h"

#include <cmath>

#include "sos/geometry/integrate.hpp"
#include "sos/geometry/scenario.hpp"
#include "sos/geometry/tubular.hpp"

using namespace sos;
using namespace sos::geometry;

namespace {
StateVec make3(double a, double b, double c) {
  StateVec v(3);
  v << a, b, c;
  return v;
}
}  // namespace

TEST_CASE("field evaluation across scenarios") {
  T3Linear t3(Vec3(1.0, 0.5, -0.25));
  StateVec v = t3.field(make3(0.2, 0.9, 0.1));
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(0.5));
  CHECK(v[2] == doctest::Approx(-0.25));

  SolidTorusModel st({1.0, 0.0, 1.0}, kTwoPi);  // f(r) = 1 + r^2
  StateVec w = st.field(make3(0.0, 0.5, 1.0));
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(0.0));
  CHECK(w[2] == doctest::Approx(1.25));

  HopfS3 hopf;
  StateVec z(4);
  z << 1.0, 0.0, 0.0, 0.0;
  StateVec hv = hopf.field(z);
  CHECK(hv[0] == doctest::Approx(0.0));
  CHECK(hv[1] == doctest::Approx(1.0));
  CHECK(hv[2] == doctest::Approx(0.0));
  CHECK(hv[3] == doctest::Approx(0.0));

  // off-atlas point is rejected with a domain error
  CHECK_THROWS_AS(st.field(make3(0.0, 1.5, 0.0)), std::domain_error);
}

TEST_CASE("analytic jacobians match finite differences") {
  SolidTorusModel st({1.0, 0.0, 1.0}, kTwoPi);
  StateVec p = make3(1.0, 0.5, 2.0);
  MatX ja = st.jacobian(p);
  CHECK(ja(2, 1) == doctest::Approx(1.0));  // f'(0.5) = 2 r = 1
  MatX jf = fd_jacobian(st, p);
  CHECK((ja - jf).cwiseAbs().maxCoeff() < 1e-6);

  SolidTorusLinear lin((Mat2() << 0.2, -0.9, 1.1, -0.2).finished(), Cplx(0.4, -0.3), kTwoPi);
  StateVec q = make3(0.3, 0.4, 1.7);
  CHECK((lin.jacobian(q) - fd_jacobian(lin, q)).cwiseAbs().maxCoeff() < 1e-6);

  T3Linear t3(Vec3(1, 2, 3));
  CHECK(t3.jacobian(make3(0, 0, 0)).cwiseAbs().maxCoeff() == 0.0);

  HopfS3 hopf;
  StateVec z(4);
  z << 0.8, 0.0, 0.6, 0.0;
  MatX jh = hopf.jacobian(z);
  CHECK(jh(0, 1) == doctest::Approx(-1.0));
  CHECK(jh(1, 0) == doctest::Approx(1.0));
  CHECK(jh(2, 3) == doctest::Approx(-1.0));
  CHECK(jh(3, 2) == doctest::Approx(1.0));
  CHECK((jh - fd_jacobian(hopf, z)).cwiseAbs().maxCoeff() < 1e-6);

  GeodesicS2 geo;
  StateVec g(6);
  g << 1, 0, 0, 0, 1, 0;
  CHECK((geo.jacobian(g) - fd_jacobian(geo, g)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("trajectory integration hits closed-form endpoints") {
  // rational slope on the torus: time 1 returns to the start across the seam
  T3Linear t3(Vec3(1.0, 0.0, 0.0));
  StateVec end = flow_endpoint(t3, make3(0.0, 0.0, 0.0), 1.0);
  CHECK(t3.distance(end, make3(0.0, 0.0, 0.0)) < 1e-10);

  // chart transition consistency: crossing the seam repeatedly stays exact
  T3Linear t3b(Vec3(1.0, 0.30000000000000004, 0.7));
  StateVec e2 = flow_endpoint(t3b, make3(0.9, 0.2, 0.5), 7.3);
  StateVec truth = make3(0.9 + 7.3, 0.2 + 7.3 * 0.30000000000000004, 0.5 + 7.3 * 0.7);
  CHECK(t3b.distance(e2, t3b.wrap(truth)) < 1e-8);

  // the Hopf flow has period 2 pi; the constraint stays satisfied
  HopfS3 hopf;
  StateVec z0(4);
  z0 << std::sqrt(1.0 - 0.09), 0.0, 0.3, 0.0;
  StateVec z1 = flow_endpoint(hopf, z0, kTwoPi);
  CHECK(hopf.distance(z0, z1) < 1e-8);
  CHECK(std::abs(z1.norm() - 1.0) < 1e-12);

  // equatorial great circle closes after 2 pi
  GeodesicS2 geo;
  StateVec g0(6);
  g0 << 1, 0, 0, 0, 1, 0;
  StateVec g1 = flow_endpoint(geo, g0, kTwoPi);
  CHECK(geo.distance(g0, g1) < 1e-8);
}

TEST_CASE("constraint projection keeps invariants over long spans") {
  GeodesicS2 geo;
  StateVec g0(6);
  g0 << 0.6, 0.0, 0.8, 0.0, 1.0, 0.0;
  geo.project(g0);
  StateVec g1 = flow_endpoint(geo, g0, 100.0);
  Vec3 x = g1.head<3>(), v = g1.tail<3>();
  CHECK(std::abs(x.norm() - 1.0) < 1e-8);
  CHECK(std::abs(v.norm() - 1.0) < 1e-8);
  CHECK(std::abs(x.dot(v)) < 1e-8);
}

TEST_CASE("leaving the atlas reports a partial path") {
  SolidTorusModel st({1.0}, kTwoPi);
  // start outside the disk: immediate rejection
  Trajectory t = integrate_flow(st, make3(0.0, 1.2, 0.0), 1.0);
  CHECK(!t.complete);
  CHECK(!t.error.empty());

  CHECK_THROWS_AS(flow_endpoint(st, make3(0.0, 1.2, 0.0), 1.0), IntegrationError);
}

TEST_CASE("tube charts round-trip and are mutually inverse") {
  SolidTorusModel st({1.0, 0.0, 1.0}, kTwoPi);
  auto frame = st.tubular_frame(0);
  Vec3 tub = frame->to_tube(make3(1.0, 0.5, 2.0));
  CHECK(tub[0] == doctest::Approx(1.0));
  CHECK(tub[1] == doctest::Approx(0.5));
  CHECK(tub[2] == doctest::Approx(2.0));
  StateVec back = frame->from_tube(tub[0], tub[1], tub[2]);
  CHECK(st.distance(back, make3(1.0, 0.5, 2.0)) < 1e-10);

  HopfS3 hopf(0.7);
  auto hf = hopf.tubular_frame(0);
  // a point with arg z1 = 0.9, |z2| = 0.35, arg z2 = 2.2
  double rho = 0.35;
  StateVec z(4);
  z << std::sqrt(1 - rho * rho) * std::cos(0.9), std::sqrt(1 - rho * rho) * std::sin(0.9),
      rho * std::cos(2.2), rho * std::sin(2.2);
  Vec3 tu = hf->to_tube(z);
  CHECK(tu[0] == doctest::Approx(0.9));
  CHECK(tu[1] == doctest::Approx(0.5));   // r = rho / rho_max
  CHECK(tu[2] == doctest::Approx(2.2));   // aligned angle is arg z2
  StateVec zz = hf->from_tube(tu[0], tu[1], tu[2]);
  CHECK((zz - z).norm() < 1e-10);

  // core points map to r = 0 (theta reported as 0 by convention)
  StateVec core(4);
  core << std::cos(0.4), std::sin(0.4), 0.0, 0.0;
  Vec3 tc = hf->to_tube(core);
  CHECK(tc[0] == doctest::Approx(0.4));
  CHECK(tc[1] == doctest::Approx(0.0));
  CHECK(tc[2] == doctest::Approx(0.0));

  // outside the tube: domain error
  StateVec far(4);
  far << 0.0, 0.0, 1.0, 0.0;
  CHECK_THROWS_AS(hf->to_tube(far), std::domain_error);
}

TEST_CASE("tube fields push the flow forward correctly") {
  // solid torus: Z = (1, -f(r) y, f(r) x)
  SolidTorusModel st({1.0, 0.0, 1.0}, kTwoPi);
  auto fr = st.tubular_frame(0);
  Vec3 z = fr->tube_field(0.3, 0.3, 0.4);  // r = 0.5, f = 1.25
  CHECK(z[0] == doctest::Approx(1.0));
  CHECK(z[1] == doctest::Approx(-1.25 * 0.4));
  CHECK(z[2] == doctest::Approx(1.25 * 0.3));

  // Hopf in the aligned frame: Z = (1, -y, x) exactly, any radius
  HopfS3 hopf;
  auto hf = hopf.tubular_frame(0);
  Vec3 hz = hf->tube_field(1.1, 0.25, -0.6);
  CHECK(hz[0] == doctest::Approx(1.0));
  CHECK(hz[1] == doctest::Approx(0.6));
  CHECK(hz[2] == doctest::Approx(0.25));

  // cross-check the Hopf tube field against the chain rule through the chart:
  // push a short arc of the ambient flow into tube coordinates
  double t0 = 0.7, r0 = 0.5, th0 = 1.9, h = 1e-6;
  StateVec p = hf->from_tube(t0, r0, th0);
  StateVec q = flow_endpoint(hopf, p, h);
  Vec3 a = hf->to_tube(p), b = hf->to_tube(q);
  Vec3 w0(a[1] * std::cos(a[2]), a[1] * std::sin(a[2]), 0.0);
  Vec3 w1(b[1] * std::cos(b[2]), b[1] * std::sin(b[2]), 0.0);
  Vec3 num((b[0] - a[0]) / h, (w1[0] - w0[0]) / h, (w1[1] - w0[1]) / h);
  Vec3 ana = hf->tube_field(t0, w0[0], w0[1]);
  CHECK((num - ana).norm() < 1e-5);

  // default FD transverse jacobian agrees with the analytic override
  SolidTorusLinear lin((Mat2() << 0.0, -2.0, 2.0, 0.0).finished(), Cplx(0.3, 0.1), kTwoPi);
  auto lf = lin.tubular_frame(0);
  Mat2 want = lf->transverse_jacobian(0.0, 0.2, -0.1);
  // rebuild via the base-class finite difference path
  struct RawFrame : geometry::TubularFrame {
    const geometry::TubularFrame* inner;
    RawFrame(const geometry::TubularFrame* f) : TubularFrame(0, f->period()), inner(f) {}
    Vec3 to_tube(const StateVec& p) const override { return inner->to_tube(p); }
    StateVec from_tube(double t, double r, double th) const override {
      return inner->from_tube(t, r, th);
    }
    Vec3 tube_field(double t, double x, double y) const override {
      return inner->tube_field(t, x, y);
    }
  } raw(lf.get());
  CHECK((raw.transverse_jacobian(0.0, 0.2, -0.1) - want).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("scenarios without frames refuse politely") {
  GeodesicS2 geo;
  CHECK_THROWS_AS(geo.tubular_frame(0), ClassError);
}
