#include "doctest.h"

#include <cmath>

#include "sos/boundary/blowup.hpp"
#include "sos/boundary/framing.hpp"
#include "sos/boundary/rotation.hpp"
#include "sos/boundary/torus_field.hpp"
#include "sos/common/rng.hpp"
#include "sos/geometry/scenario.hpp"
#include "sos/orbit/orbit.hpp"

using namespace sos;
using namespace sos::boundary;
using namespace sos::geometry;

namespace {
const double kSqrt3 = 1.7320508075688772;

orbit::TransverseBlock block_for(const Scenario& s, double period) {
  StateVec seed(3);
  seed << 0.0, 0.0, 0.0;
  auto orb = orbit::refine_periodic_orbit(s, seed, period);
  return orbit::transverse_block(s, orb, *s.tubular_frame(0));
}
}  // namespace

TEST_CASE("blow-up reproduces the chart field away from the core") {
  Mat2 a2;
  a2 << 0.1, -0.4, 0.7, 0.2;
  const Cplx kappa(0.3, 0.2);
  SolidTorusLinear lin(a2, kappa, kTwoPi);
  auto frame = lin.tubular_frame(0);
  BlowupField bf(*frame);

  for (double r : {0.3, 0.05, 0.01}) {
    for (double theta : {0.0, 0.7, 2.0, 4.4}) {
      const double t = 1.3;
      Vec2 e(std::cos(theta), std::sin(theta));
      Vec2 ie(-e[1], e[0]);
      Vec2 w = r * e;
      Vec3 z = frame->tube_field(t, w[0], w[1]);
      Vec2 zw(z[1], z[2]);
      Vec3 got = bf.field(t, r, theta);
      CHECK(std::abs(got[0] - z[0]) < 1e-13);
      CHECK(std::abs(got[1] - zw.dot(e)) < 1e-13);
      CHECK(std::abs(got[2] - zw.dot(ie) / r) < 1e-12);
    }
  }

  // averaged differential of A2 w + kappa w^2 is A2 + (matrix of) kappa w
  Vec2 w(0.2, -0.1);
  Cplx kw = kappa * Cplx(w[0], w[1]);
  Mat2 want = a2;
  want(0, 0) += kw.real();
  want(1, 1) += kw.real();
  want(0, 1) -= kw.imag();
  want(1, 0) += kw.imag();
  CHECK((bf.a_matrix(0.0, w) - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("core restriction of the blow-up field") {
  // rotation block: b is the constant angular speed
  SolidTorusLinear rot((Mat2() << 0.0, -0.3, 0.3, 0.0).finished(), Cplx(0, 0), kTwoPi);
  auto rot_frame = rot.tubular_frame(0);
  BlowupField bf_rot(*rot_frame);
  for (double theta = 0.0; theta < kTwoPi; theta += 0.37) {
    CHECK(std::abs(bf_rot.core_field(0.9, theta) - 0.3) < 1e-13);
    Vec3 at_core = bf_rot.field(0.9, 0.0, theta);
    CHECK(at_core[1] == 0.0);
    CHECK(std::abs(at_core[2] - 0.3) < 1e-13);
  }

  // shear block diag(l, -l): b(theta) = -l sin(2 theta)
  SolidTorusLinear shear((Mat2() << 0.5, 0.0, 0.0, -0.5).finished(), Cplx(0, 0), kTwoPi);
  auto shear_frame = shear.tubular_frame(0);
  BlowupField bf_shear(*shear_frame);
  for (double theta = 0.0; theta < kTwoPi; theta += 0.29)
    CHECK(std::abs(bf_shear.core_field(0.0, theta) + 0.5 * std::sin(2.0 * theta)) < 1e-13);
}

TEST_CASE("angular component approaches the core field linearly in r") {
  // with a quadratic transverse term the deviation is exactly
  // r * Im(kappa e^{i theta})
  const Cplx kappa(0.4, -0.25);
  SolidTorusLinear lin((Mat2() << 0.0, -1.0, 1.0, 0.0).finished(), kappa, kTwoPi);
  auto frame = lin.tubular_frame(0);
  BlowupField bf(*frame);
  for (double r : {0.5, 1e-2, 1e-3, 1e-4}) {
    for (double theta : {0.3, 1.9, 3.3, 5.6}) {
      double b = bf.core_field(0.0, theta);
      double dev = bf.field(0.0, r, theta)[2] - b;
      double want = r * (kappa * std::exp(Cplx(0, theta))).imag();
      CHECK(std::abs(dev - want) < 1e-12);
    }
  }
}

TEST_CASE("blow-up of the solid torus profile model via numeric differentials") {
  SolidTorusModel st({1.0, 0.0, 1.0}, kTwoPi);  // angular profile f(r) = 1 + r^2
  auto frame = st.tubular_frame(0);
  BlowupField bf(*frame);
  for (double theta : {0.2, 1.5, 4.0}) {
    CHECK(std::abs(bf.core_field(0.4, theta) - 1.0) < 1e-7);
    Vec3 w = bf.field(0.4, 0.4, theta);
    CHECK(std::abs(w[1]) < 1e-7);            // radii are invariant
    CHECK(std::abs(w[2] - 1.16) < 1e-7);     // f(0.4)
  }
}

TEST_CASE("blow-up of the round fibration tube is rigid") {
  HopfS3 hopf;
  auto frame = hopf.tubular_frame(0);
  BlowupField bf(*frame);
  for (double r : {0.0, 0.5, 0.9}) {
    Vec3 w = bf.field(2.2, r, 1.1);
    CHECK(std::abs(w[0] - 1.0) < 1e-12);
    CHECK(std::abs(w[1]) < 1e-12);
    CHECK(std::abs(w[2] - 1.0) < 1e-12);
  }
}

TEST_CASE("boundary torus field: grids reproduce the block linearization") {
  SolidTorusLinear shear((Mat2() << 0.5, 0.0, 0.0, -0.5).finished(), Cplx(0, 0), kTwoPi);
  auto block = block_for(shear, kTwoPi);
  auto field = BoundaryTorusField::from_block(block);
  CHECK(field.period() == block.period);
  CHECK(field.grid().nx() == 256);

  // node values are exact; interpolated values carry only grid error
  const auto& g = field.grid();
  for (int j = 0; j < g.ny(); j += 17) {
    double theta = g.node_y(j);
    CHECK(std::abs(g.at(3, j) + 0.5 * std::sin(2.0 * theta)) < 1e-12);
  }
  for (double theta = 0.05; theta < kTwoPi; theta += 0.61)
    CHECK(std::abs(field.eval(1.0, theta) + 0.5 * std::sin(2.0 * theta)) < 1e-5);
}

TEST_CASE("rigid torus fields are represented exactly") {
  auto field = BoundaryTorusField::from_function(
      kTwoPi, [](double, double) { return 0.3; }, 8, 8);
  CHECK(field.eval(0.123, 4.56) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("angular drift of a rigid field is exact") {
  auto field = BoundaryTorusField::from_function(
      kTwoPi, [](double, double) { return 0.3; }, 8, 8);
  auto est = estimate_rotation(field);
  CHECK(std::abs(est.value - 0.3) < 1e-12);
  CHECK(est.error_bound < 1e-12);
  // windows: horizons 2^5 .. 2^12 for each of the 8 phases
  CHECK(est.windows.size() == 8 * 8);
}

TEST_CASE("angular drift of d theta/dt = 2 + cos theta is sqrt(3)") {
  // harmonic-mean closed form: the orbit period is 2 pi / sqrt(2^2 - 1)
  RotationOptions opt;
  opt.horizon_mult = 1L << 14;
  auto est = estimate_rotation(
      kTwoPi, [](double, double theta) { return 2.0 + std::cos(theta); }, opt);
  CHECK(std::abs(est.value - kSqrt3) < 3e-5);
  CHECK(est.error_bound < 5e-4);

  // same field through a sampled grid: adds only interpolation error
  auto field = BoundaryTorusField::from_function(
      kTwoPi, [](double, double theta) { return 2.0 + std::cos(theta); }, 4, 512);
  RotationOptions gopt;
  gopt.horizon_mult = 1L << 12;
  auto gest = estimate_rotation(field, gopt);
  CHECK(std::abs(gest.value - kSqrt3) < 1e-4);
}

TEST_CASE("angular drift vanishes when the field has zeros") {
  // -0.5 sin(2 theta) pins every orbit to a rest point; the transient is
  // discarded, so the difference quotient collapses to zero
  auto field = BoundaryTorusField::from_function(
      kTwoPi, [](double, double theta) { return -0.5 * std::sin(2.0 * theta); }, 4, 256);
  auto est = estimate_rotation(field);
  CHECK(std::abs(est.value) < 1e-12);
  CHECK(est.error_bound < 1e-12);
}

TEST_CASE("rotation numbers are framing invariant") {
  Rng rng(1234);
  for (int i = 0; i < 10; ++i) {
    double p = rng.uniform(-3.0, 3.0);
    double q = rng.uniform(0.1, 4.0);
    double T = rng.uniform(0.5, 12.0);
    double rho_t = rng.uniform(-2.0, 2.0);
    double base = rho_y(p, q, T, rho_t);
    for (int m : {-5, -1, 1, 3, 5}) {
      Framing f = reframe(p, q, T, rho_t, m);
      CHECK(std::abs(rho_y(f.p, q, T, f.rho_theta) - base) <= 1e-12);
    }
    // twisting by m then -m restores the chart data
    Framing f = reframe(p, q, T, rho_t, 4);
    Framing back = reframe(f.p, q, T, f.rho_theta, -4);
    CHECK(std::abs(back.p - p) < 1e-12);
    CHECK(std::abs(back.rho_theta - rho_t) < 1e-12);
  }
}
