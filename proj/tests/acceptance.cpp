// Acceptance gate: ten end-to-end checks at fixed tolerances, one line per
// check, nonzero exit when any fails.  Everything here is seeded and
// deterministic; the whole gate targets well under ten minutes.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "sos/boundary/blowup.hpp"
#include "sos/boundary/framing.hpp"
#include "sos/boundary/rotation.hpp"
#include "sos/boundary/torus_field.hpp"
#include "sos/common/rng.hpp"
#include "sos/common/types.hpp"
#include "sos/measures/birkhoff.hpp"
#include "sos/measures/certify.hpp"
#include "sos/measures/torus_measure.hpp"
#include "sos/runner/config.hpp"
#include "sos/runner/pipeline.hpp"
#include "sos/runner/report.hpp"

using namespace sos;

namespace {

int failures = 0;

std::string detail_buf;

void detail(const char* pattern, ...) {
  char buf[240];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  detail_buf = buf;
}

void line(int idx, const char* what, bool pass) {
  std::printf("[%2d] %s  %-52s %s\n", idx, pass ? "PASS" : "FAIL", what,
              detail_buf.c_str());
  std::fflush(stdout);
  detail_buf.clear();
  if (!pass) ++failures;
}

std::string config_path(const char* name) {
  return std::string(SOS_CONFIG_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// 1. rotation numbers against the closed-form quadrature oracle

bool rotation_oracle() {
  // d theta/dt = a + cos theta with a > 1 has return time
  // T_ret = integral_0^{2pi} d theta / (a + cos theta) = 2 pi / sqrt(a^2 - 1),
  // so the drift rate is sqrt(a^2 - 1); composite Simpson recovers it here.
  const double a = 2.0;
  const int n = 4096;
  const double h = kTwoPi / n;
  double integral = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t0 = i * h, t1 = (i + 0.5) * h, t2 = (i + 1) * h;
    const auto f = [&](double th) { return 1.0 / (a + std::cos(th)); };
    integral += h / 6.0 * (f(t0) + 4.0 * f(t1) + f(t2));
  }
  const double oracle = kTwoPi / integral;
  if (std::abs(oracle - std::sqrt(3.0)) > 1e-12) return false;

  boundary::RotationOptions opt;
  opt.horizon_mult = 1L << 16;
  const auto est = boundary::estimate_rotation(
      kTwoPi, [&](double, double th) { return a + std::cos(th); }, opt);
  const double err = std::abs(est.value - oracle);

  boundary::RotationOptions quick;
  const auto rigid = boundary::estimate_rotation(
      kTwoPi, [](double, double) { return 0.3; }, quick);
  const double rigid_err = std::abs(rigid.value - 0.3);

  detail("drift err %.2e (tol 1e-6), rigid err %.2e (tol 1e-9)", err, rigid_err);
  return err <= 1e-6 && rigid_err <= 1e-9;
}

// ---------------------------------------------------------------------------
// 2. rotation numbers are framing-invariant

bool framing_invariance() {
  Rng rng(20260816);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double p = -3.0 + 6.0 * rng.uniform();
    const double q = -3.0 + 6.0 * rng.uniform();
    const double rho = -2.0 + 4.0 * rng.uniform();
    const double period = 0.5 + 7.5 * rng.uniform();
    const int m = -5 + static_cast<int>(11.0 * rng.uniform());
    const double base = boundary::rho_y(p, q, period, rho);
    const auto fr = boundary::reframe(p, q, period, rho, m);
    const double after = boundary::rho_y(fr.p, q, period, fr.rho_theta);
    worst = std::max(worst, std::abs(after - base));
  }
  detail("50 tuples, m in [-5,5], worst drift %.2e (tol 1e-12)", worst);
  return worst <= 1e-12;
}

// ---------------------------------------------------------------------------
// 3. the blown-up angular field converges linearly to the torus field

bool blowup_limit() {
  const double om = 0.7, lam = 0.5;
  Mat2 rot_block, hyp_block;
  rot_block << 0.0, -om, om, 0.0;
  hyp_block << lam, 0.0, 0.0, -lam;
  const geometry::SolidTorusLinear scenarios[2] = {
      {rot_block, Cplx(0.35, 0.2), kTwoPi}, {hyp_block, Cplx(0.25, -0.15), kTwoPi}};

  double worst_var = 0.0;
  for (const auto& s : scenarios) {
    const auto frame = s.tubular_frame(0);
    const boundary::BlowupField bf(*frame);
    const double radii[3] = {1e-2, 1e-3, 1e-4};
    double cmin = 1e300, cmax = 0.0;
    for (double r : radii) {
      double c = 0.0;
      for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 48; ++j) {
          const double t = kTwoPi * i / 24, th = kTwoPi * j / 48;
          const double gap = std::abs(bf.field(t, r, th)[2] - bf.core_field(t, th));
          c = std::max(c, gap / r);
        }
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
    if (!(cmax > 0.0)) return false;
    worst_var = std::max(worst_var, (cmax - cmin) / cmax);
  }
  detail("fitted slope varies %.2e across r=1e-2..1e-4 (tol 0.2)", worst_var);
  return worst_var < 0.2;
}

// ---------------------------------------------------------------------------
// 4. invariant-measure pairings equal the rotation-number formula

bool measure_pairing() {
  const auto rigid = boundary::BoundaryTorusField::from_function(
      kTwoPi, [](double, double) { return 0.3; }, 64, 64);
  const auto pr =
      measures::boundary_measure_pairing(rigid, measures::TorusMeasure::area(), 1.0);

  const auto hyp = boundary::BoundaryTorusField::from_function(
      kTwoPi, [](double, double th) { return -0.5 * std::sin(2.0 * th); }, 64, 128);
  const auto pc =
      measures::boundary_measure_pairing(hyp, measures::TorusMeasure::circle(0.0), 1.0);

  detail("area-measure gap %.2e, circle-measure gap %.2e (tol 1e-6)", pr.mismatch,
         pc.mismatch);
  return pr.mismatch <= 1e-6 && pc.mismatch <= 1e-6;
}

// ---------------------------------------------------------------------------
// 5. LP certification resolves the sign of the flat-torus class

bool lp_certification() {
  const geometry::T3Linear t3(Vec3(1.0, 1.618, 1.414));
  const auto grid = measures::OccupationGrid::flat3(t3, 8);

  const auto run = [&](double sign) {
    const auto cls = cohomology::DualClass::interior(Vec3(sign, 0.0, 0.0));
    return measures::certify_positivity(
        measures::assemble_lp(grid, cls.representative(t3), 1e-8));
  };
  const auto plus = run(1.0);
  const auto minus = run(-1.0);

  using V = measures::Certificate::Verdict;
  const bool plus_ok = plus.verdict == V::certified &&
                       std::abs(plus.eps_star - 1.0) <= 1e-4 &&
                       plus.duality_gap <= 1e-8 &&
                       plus.dual_margin > 2.0 * plus.disc_err &&
                       plus.refined_min >= plus.dual_margin / 2.0;
  const bool minus_ok = minus.verdict == V::refuted &&
                        std::abs(minus.pairing_value + 1.0) <= 1e-4 &&
                        minus.delta_inv <= 1e-6;
  detail("+: eps*=%.6f gap=%.1e; -: pairing=%.6f", plus.eps_star, plus.duality_gap,
         minus.pairing_value);
  return plus_ok && minus_ok;
}

// ---------------------------------------------------------------------------
// 6. end-to-end solid torus meridian run

bool solid_torus_end_to_end() {
  const auto rep =
      runner::run_scenario(runner::load_config(config_path("solid_torus_meridian.json")));
  bool ok = rep.exit_code == 0 && rep.condition.holds && rep.section_ran;
  ok = ok && rep.leaf.boundary.size() == 1 && rep.leaf.boundary[0].n1 == 1 &&
       rep.leaf.boundary[0].n2 == 0;
  for (const auto& row : rep.section.degrees) ok = ok && row.match;
  const auto& st = rep.section.returns;
  ok = ok && st.samples >= 1000 && st.misses == 0 &&
       std::abs(st.tau_min - kTwoPi) <= 1e-6 && std::abs(st.tau_max - kTwoPi) <= 1e-6;
  detail("exit %d, winding (%d,%d), tau in [%.9f, %.9f]", rep.exit_code,
         rep.leaf.boundary.empty() ? 0 : rep.leaf.boundary[0].n1,
         rep.leaf.boundary.empty() ? 0 : rep.leaf.boundary[0].n2, st.tau_min, st.tau_max);
  return ok;
}

// ---------------------------------------------------------------------------
// 7. hyperbolic boundary: rotation number vanishes, class is obstructed

bool generic_obstruction() {
  const auto rep = runner::run_scenario(
      runner::load_config(config_path("hyperbolic_obstruction.json")));
  if (rep.condition.components.size() != 1) return false;
  const auto& cc = rep.condition.components[0];
  const double big = std::max(std::abs(cc.multipliers[0]), std::abs(cc.multipliers[1]));
  const double small = std::min(std::abs(cc.multipliers[0]), std::abs(cc.multipliers[1]));
  const double mult_err = std::max(std::abs(big - std::exp(kPi)) / std::exp(kPi),
                                   std::abs(small - std::exp(-kPi)) / std::exp(-kPi));
  detail("rho_y %.1e, multiplier err %.1e, class %s, exit %d", std::abs(cc.rho_y),
         mult_err, cc.orbit_class.c_str(), rep.exit_code);
  return rep.exit_code == 2 && !rep.condition.rotation_holds &&
         std::abs(cc.rho_y) <= 1e-9 && cc.orbit_class == "hyperbolic" &&
         mult_err <= 1e-6 && cc.generic_obstruction;
}

// ---------------------------------------------------------------------------
// 8. Birkhoff annulus of the round geodesic flow

bool birkhoff_annulus() {
  const auto rep =
      runner::run_scenario(runner::load_config(config_path("birkhoff_annulus.json")));
  detail("margin %.4f, tau_max %.6f (cap %.6f), misses %d/%d", rep.annulus.min_margin,
         rep.annulus.tau_max, kTwoPi + 1e-3, rep.annulus.misses, rep.annulus.samples);
  return rep.exit_code == 0 && rep.annulus.samples == 10000 && rep.annulus.misses == 0 &&
         rep.annulus.min_margin > 0.0 && rep.annulus.tau_max <= kTwoPi + 1e-3;
}

// ---------------------------------------------------------------------------
// 9. Birkhoff averages agree with the LP uniform pairing

bool estimator_consistency() {
  const geometry::T3Linear t3(Vec3(1.0, 1.618, 1.414));
  const auto grid = measures::OccupationGrid::flat3(t3, 8);
  StateVec p0(3);
  p0 << 0.12, 0.34, 0.56;

  // plain coordinate class, and the same class bent by an exact potential
  const auto plain = cohomology::DualClass::interior(Vec3(1, 0, 0)).representative(t3);
  cohomology::Potential g;
  g.value = [](const StateVec& x) { return 0.02 * std::sin(kTwoPi * x[1]); };
  g.gradient = [](const StateVec& x) {
    StateVec d(3);
    d << 0.0, 0.02 * kTwoPi * std::cos(kTwoPi * x[1]), 0.0;
    return d;
  };
  const auto bent = plain.with_potential(g);

  double worst = 0.0;
  for (const auto* form : {&plain, &bent}) {
    const double uniform = measures::uniform_pairing(grid, *form);
    const auto est = measures::birkhoff_average(t3, *form, p0, 1000.0);
    worst = std::max(worst, std::abs(est.value - uniform));
  }
  detail("worst |time avg - uniform pairing| %.2e at horizon 1e3 (tol 1e-4)", worst);
  return worst <= 1e-4;
}

// ---------------------------------------------------------------------------
// 10. byte-identical reports modulo timing

bool reproducibility() {
  for (const char* name : {"solid_torus_meridian.json", "hopf_fiber.json"}) {
    const auto cfg = runner::load_config(config_path(name));
    const std::string a = runner::report_json(runner::run_scenario(cfg));
    const std::string b = runner::report_json(runner::run_scenario(cfg));
    auto da = nlohmann::ordered_json::parse(a);
    auto db = nlohmann::ordered_json::parse(b);
    da.erase("timing");
    db.erase("timing");
    if (da.dump() != db.dump()) {
      detail("reports for %s differ beyond timing", name);
      return false;
    }
  }
  detail("two bundled configs, reports identical modulo timing");
  return true;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Check {
    const char* what;
    bool (*fn)();
  };
  const Check checks[] = {
      {"rotation numbers match the quadrature oracle", rotation_oracle},
      {"rotation numbers are framing-invariant", framing_invariance},
      {"blow-up angular field converges linearly", blowup_limit},
      {"invariant-measure pairing equals rho_y", measure_pairing},
      {"LP certification resolves the class sign", lp_certification},
      {"solid torus meridian certifies end to end", solid_torus_end_to_end},
      {"hyperbolic boundary obstructs the class", generic_obstruction},
      {"geodesic Birkhoff annulus verifies", birkhoff_annulus},
      {"Birkhoff average matches uniform pairing", estimator_consistency},
      {"reports are byte-identical modulo timing", reproducibility},
  };

  int idx = 0;
  for (const auto& c : checks) {
    ++idx;
    bool pass = false;
    try {
      pass = c.fn();
    } catch (const std::exception& e) {
      detail("exception: %s", e.what());
    }
    line(idx, c.what, pass);
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/10 passed in %.1f s\n", 10 - failures, secs);
  return failures == 0 ? 0 : 1;
}
