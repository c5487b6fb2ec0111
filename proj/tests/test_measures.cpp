#include "doctest.h"

#include <cmath>

#include "sos/boundary/torus_field.hpp"
#include "sos/cohomology/dual_class.hpp"
#include "sos/measures/birkhoff.hpp"
#include "sos/measures/certify.hpp"
#include "sos/measures/condition.hpp"
#include "sos/measures/occupation.hpp"
#include "sos/measures/test_functions.hpp"
#include "sos/measures/torus_measure.hpp"

using namespace sos;
using namespace sos::measures;
using namespace sos::geometry;
using cohomology::DualClass;
using cohomology::GridOneForm;
using cohomology::Potential;

namespace {
const double kInv2Pi = 1.0 / kTwoPi;

Potential t3_wave(double amp) {
  Potential g;
  g.value = [amp](const StateVec& x) {
    return amp * std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]);
  };
  g.gradient = [amp](const StateVec& x) {
    StateVec d(3);
    d << amp * kTwoPi * std::cos(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]),
        -amp * kTwoPi * std::sin(kTwoPi * x[0]) * std::sin(kTwoPi * x[1]), 0.0;
    return d;
  };
  return g;
}

Mat2 hyperbolic_a2() {
  Mat2 a;
  a << 0.5, 0.0, 0.0, -0.5;
  return a;
}
}  // namespace

TEST_CASE("occupation grid structure and counts") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto g = OccupationGrid::flat3(t3, 8);
  CHECK(g.size() == 512);
  double wsum = 0.0;
  for (int c = 0; c < g.size(); ++c) {
    CHECK(g.cell(c).kind == GridCell::Kind::interior);
    wsum += g.cell(c).weight;
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.neighbor_pairs().size() == 3 * 512);

  SolidTorusModel rigid({1.0}, kTwoPi);
  auto tg = OccupationGrid::tube(rigid, 8, 6, 8);
  int interior = 0, collar = 0, wall = 0;
  double tangency = 0.0;
  for (int c = 0; c < tg.size(); ++c) {
    const auto& cell = tg.cell(c);
    if (cell.kind == GridCell::Kind::interior) ++interior;
    if (cell.kind == GridCell::Kind::collar) {
      ++collar;
      tangency = std::max(tangency, std::abs(cell.velocity[1]));
      CHECK(cell.velocity[0] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(cell.velocity[2] == doctest::Approx(1.0).epsilon(1e-9));
    }
    if (cell.kind == GridCell::Kind::wall) ++wall;
  }
  CHECK(interior == 384);
  CHECK(collar == 64);
  CHECK(wall == 64);  // the rigid field is tangent to the outer wall
  CHECK(tangency <= 1e-8);

  // non-tangent wall: no wall stratum
  SolidTorusLinear hyp(hyperbolic_a2(), Cplx(0.0, 0.0), kTwoPi);
  auto hg = OccupationGrid::tube(hyp, 8, 6, 8);
  CHECK(hg.size() == 384 + 64);

  HopfS3 hopf;
  auto fg = OccupationGrid::fibration(hopf, 8, 6, 8);
  CHECK(fg.size() == 384 + 64 + 8);
  for (int c = 0; c < fg.size(); ++c) {
    CHECK(fg.cell(c).velocity[0] == 1.0);
    CHECK(fg.cell(c).velocity[1] == 0.0);
    CHECK(fg.cell(c).velocity[2] == 0.0);
  }
}

TEST_CASE("LP assembly counts match the discretization") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto g = OccupationGrid::flat3(t3, 8);
  auto form = GridOneForm::flat3(Vec3(1.0, 0.0, 0.0));
  auto lp = assemble_lp(g, form);
  CHECK(lp.problem.n_vars() == 512);
  CHECK(lp.problem.n_eq() == 1);
  CHECK(lp.problem.n_le() == 54);
  // objective row + mass row + two-sided invariance rows
  CHECK(1 + lp.problem.n_eq() + lp.problem.n_le() == 56);
  CHECK(lp.funcs.size() == 27);

  SolidTorusModel rigid({1.0}, kTwoPi);
  auto tg = OccupationGrid::tube(rigid, 8, 6, 8);
  auto mform = GridOneForm::tube(0.0, kInv2Pi, kTwoPi);
  auto tlp = assemble_lp(tg, mform);
  CHECK(tlp.problem.n_vars() == tg.size());
  // every nodal rate equals the constant meridian pairing rate
  for (int c = 0; c < tg.size(); ++c)
    CHECK(tlp.beta[c] == doctest::Approx(kInv2Pi).epsilon(1e-9));

  CHECK_THROWS_AS((void)assemble_lp(g, mform), ClassError);
}

TEST_CASE("positivity certified on the torus with constant rate") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto g = OccupationGrid::flat3(t3, 8);
  auto form = GridOneForm::flat3(Vec3(1.0, 0.0, 0.0));
  auto cert = certify_positivity(assemble_lp(g, form));
  CHECK(cert.verdict == Certificate::Verdict::certified);
  CHECK(cert.eps_star == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cert.duality_gap <= 1e-8);
  CHECK(cert.disc_err <= 1e-9);
  CHECK(cert.refined_min >= 0.5 * cert.eps_star);
  // vertices may saturate an invariance row at the slack itself
  CHECK(cert.delta_inv <= 2e-8);
}

TEST_CASE("positivity refuted when the class is reversed") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto g = OccupationGrid::flat3(t3, 8);
  auto form = GridOneForm::flat3(Vec3(-1.0, 0.0, 0.0));
  auto cert = certify_positivity(assemble_lp(g, form));
  CHECK(cert.verdict == Certificate::Verdict::refuted);
  CHECK(cert.eps_star == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(cert.pairing_value == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(cert.delta_inv <= 1e-6);
  CHECK(cert.duality_gap <= 1e-8);
}

TEST_CASE("meridian class certified on the rigid solid torus") {
  SolidTorusModel rigid({1.0}, kTwoPi);
  auto g = OccupationGrid::tube(rigid, 8, 6, 8);
  auto form = GridOneForm::tube(0.0, kInv2Pi, kTwoPi);
  auto cert = certify_positivity(assemble_lp(g, form));
  CHECK(cert.verdict == Certificate::Verdict::certified);
  CHECK(cert.eps_star == doctest::Approx(kInv2Pi).epsilon(1e-6));
  CHECK(cert.refined_min >= 0.5 * cert.eps_star);
}

TEST_CASE("page class certified on the fibration") {
  HopfS3 hopf;
  auto g = OccupationGrid::fibration(hopf, 8, 6, 8);
  auto form = GridOneForm::fibration(1);
  auto cert = certify_positivity(assemble_lp(g, form));
  CHECK(cert.verdict == Certificate::Verdict::certified);
  CHECK(cert.eps_star == doctest::Approx(kInv2Pi).epsilon(1e-9));
  CHECK(cert.disc_err <= 1e-12);
}

TEST_CASE("hyperbolic boundary circles refute positivity") {
  SolidTorusLinear hyp(hyperbolic_a2(), Cplx(0.0, 0.0), kTwoPi);
  auto g = OccupationGrid::tube(hyp, 8, 6, 8);
  auto form = GridOneForm::tube(0.0, kInv2Pi, kTwoPi);
  auto cert = certify_positivity(assemble_lp(g, form));
  CHECK(cert.verdict == Certificate::Verdict::refuted);
  CHECK(cert.pairing_value <= 1e-6);
  CHECK(cert.delta_inv <= 1e-6);
}

TEST_CASE("single-cell grid yields the Dirac measure") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto g = OccupationGrid::flat3(t3, 1);
  CHECK(g.size() == 1);
  auto form = GridOneForm::flat3(Vec3(1.0, 0.0, 0.0));
  auto lp = assemble_lp(g, form);
  CHECK(lp.problem.n_le() == 0);
  auto cert = certify_positivity(lp);
  REQUIRE(cert.mu.size() == 1);
  CHECK(cert.mu[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cert.lp_objective == doctest::Approx(lp.beta[0]).epsilon(1e-12));
}

TEST_CASE("uniform occupation pairing is exact for corrected classes") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto g = OccupationGrid::flat3(t3, 8);
  auto form = GridOneForm::flat3(Vec3(1.0, 0.0, 0.0)).with_potential(t3_wave(0.02));
  CHECK(uniform_pairing(g, form) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pairing decomposes over convex mixtures of measures") {
  SolidTorusModel rigid({1.0}, kTwoPi);
  auto g = OccupationGrid::tube(rigid, 8, 6, 8);
  auto form = GridOneForm::tube(0.0, kInv2Pi, kTwoPi);
  auto lp = assemble_lp(g, form);

  Eigen::VectorXd interior = Eigen::VectorXd::Zero(g.size());
  Eigen::VectorXd collar = Eigen::VectorXd::Zero(g.size());
  int n_collar = 0;
  for (int c = 0; c < g.size(); ++c) {
    interior[c] = g.cell(c).weight;
    if (g.cell(c).kind == GridCell::Kind::collar) {
      collar[c] = 1.0;
      ++n_collar;
    }
  }
  collar /= n_collar;
  const double pi_int = lp.beta.dot(interior);
  const double pi_col = lp.beta.dot(collar);
  for (double lam : {0.25, 0.5, 0.9}) {
    Eigen::VectorXd mix = lam * interior + (1.0 - lam) * collar;
    CHECK(lp.beta.dot(mix) ==
          doctest::Approx(lam * pi_int + (1.0 - lam) * pi_col).epsilon(1e-12));
  }
}

TEST_CASE("time averages agree with space averages") {
  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  const double horizon = 1000.0 * t3.characteristic_period();
  StateVec p0(3);
  p0 << 0.2, 0.7, 0.1;

  auto plain = GridOneForm::flat3(Vec3(1.0, 0.0, 0.0));
  auto est = birkhoff_average(t3, plain, p0, horizon);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(est.spread <= 1e-10);

  // corrected representative: same class, bounded-telescope deviation
  auto corr = plain.with_potential(t3_wave(0.02));
  auto est2 = birkhoff_average(t3, corr, p0, horizon);
  CHECK(std::abs(est2.value - 1.0) <= 1e-4);

  auto g = OccupationGrid::flat3(t3, 8);
  CHECK(std::abs(est2.value - uniform_pairing(g, corr)) <= 1e-4);

  SolidTorusModel rigid({1.0}, kTwoPi);
  auto mform = GridOneForm::tube(0.0, kInv2Pi, kTwoPi);
  StateVec q0(3);
  q0 << 0.0, 0.5, 0.3;
  auto est3 = birkhoff_average(rigid, mform, q0, 150.0 * kTwoPi);
  CHECK(est3.value == doctest::Approx(kInv2Pi).epsilon(1e-10));

  CHECK_THROWS_AS((void)birkhoff_average(t3, plain, p0, 5.0), std::domain_error);

  // radially expanding flow leaves the chart
  SolidTorusLinear hyp(hyperbolic_a2(), Cplx(0.0, 0.0), kTwoPi);
  StateVec esc(3);
  esc << 0.0, 0.5, 0.1;
  CHECK_THROWS_AS((void)birkhoff_average(hyp, mform, esc, 150.0 * kTwoPi),
                  IntegrationError);
}

TEST_CASE("boundary torus pairings against the rotation formula") {
  auto rigid = boundary::BoundaryTorusField::from_function(
      kTwoPi, [](double, double) { return 0.3; });
  auto area = TorusMeasure::area();
  CHECK(area.invariance_residual(rigid) <= 1e-10);

  auto p1 = boundary_measure_pairing(rigid, area, 1.0);
  CHECK(p1.value == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(p1.mismatch <= 1e-6);

  auto p2 = boundary_measure_pairing(rigid, area, kInv2Pi);
  CHECK(p2.value == doctest::Approx(0.3 * kInv2Pi).epsilon(1e-9));
  CHECK(p2.mismatch <= 1e-6);

  auto hyp = boundary::BoundaryTorusField::from_function(
      kTwoPi, [](double, double th) { return -0.5 * std::sin(2.0 * th); });
  CHECK(area.invariance_residual(hyp) > 1e-3);
  CHECK_THROWS_AS((void)boundary_measure_pairing(hyp, area, 1.0), ClassError);

  auto fixed = TorusMeasure::circle(0.0);
  CHECK(fixed.invariance_residual(hyp) <= 1e-10);
  auto p3 = boundary_measure_pairing(hyp, fixed, 1.0);
  CHECK(p3.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p3.mismatch <= 1e-9);

  CHECK_THROWS_AS((void)boundary_measure_pairing(hyp, TorusMeasure::circle(0.3), 1.0),
                  ClassError);
}

TEST_CASE("full condition check on closed-form scenarios") {
  ConditionOptions opt;

  SolidTorusModel rigid({1.0}, kTwoPi);
  auto meridian = DualClass::tube(1, kTwoPi);
  auto rep = check_condition_iii(rigid, meridian, opt);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].rho_theta == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.components[0].rho_y == doctest::Approx(kInv2Pi).epsilon(1e-6));
  CHECK(rep.components[0].positive);
  CHECK(rep.rotation_holds);
  CHECK(rep.certificate.verdict == Certificate::Verdict::certified);
  CHECK(rep.holds);

  SolidTorusModel reversed({-1.0}, kTwoPi);
  auto rep2 = check_condition_iii(reversed, meridian, opt);
  CHECK(rep2.components[0].rho_y == doctest::Approx(-kInv2Pi).epsilon(1e-6));
  CHECK_FALSE(rep2.components[0].positive);
  CHECK_FALSE(rep2.rotation_holds);
  CHECK_FALSE(rep2.holds);

  SolidTorusLinear hyp(hyperbolic_a2(), Cplx(0.0, 0.0), kTwoPi);
  auto rep3 = check_condition_iii(hyp, meridian, opt);
  CHECK(std::abs(rep3.components[0].rho_y) <= 1e-9);
  CHECK(rep3.components[0].orbit_class == "hyperbolic");
  CHECK(rep3.components[0].generic_obstruction);
  CHECK_FALSE(rep3.holds);

  T3Linear t3(Vec3(1.0, 1.618, 1.414));
  auto plus = check_condition_iii(t3, DualClass::interior(Vec3(1, 0, 0)), opt);
  CHECK(plus.rotation_holds);  // no link components
  CHECK(plus.components.empty());
  CHECK(plus.holds);
  auto minus = check_condition_iii(t3, DualClass::interior(Vec3(-1, 0, 0)), opt);
  CHECK(minus.certificate.verdict == Certificate::Verdict::refuted);
  CHECK_FALSE(minus.holds);

  HopfS3 hopf;
  auto page = check_condition_iii(hopf, DualClass::fibration(1), opt);
  REQUIRE(page.components.size() == 1);
  CHECK(page.components[0].rho_theta == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(page.components[0].rho_y == doctest::Approx(kInv2Pi).epsilon(1e-6));
  CHECK(page.certificate.verdict == Certificate::Verdict::certified);
  CHECK(page.holds);
}
