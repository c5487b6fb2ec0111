#include "sos/runner/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "sos/lp/lp_format.hpp"
#include "sos/measures/certify.hpp"
#include "sos/measures/occupation.hpp"
#include "sos/section/projection.hpp"
#include "sos/section/returns.hpp"

namespace sos::runner {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a);
  return buf;
}

// Where the projection integral is anchored.  Chart origins work for the
// closed torus and the tube; the fibration needs an ambient point away from
// both the blow-up torus (nu = 0) and the chart pole circle (nu = 1).
StateVec section_basepoint(ScenarioKind kind) {
  if (kind == ScenarioKind::hopf_s3) {
    const double s = 0.3, nu = 0.5, alpha = 1.0;
    const double r1 = std::sqrt(1.0 - nu * nu);
    StateVec p(4);
    p << r1 * std::cos(alpha + s), r1 * std::sin(alpha + s), nu * std::cos(s),
        nu * std::sin(s);
    return p;
  }
  StateVec p(3);
  p.setZero();
  return p;
}

measures::AssembledLp assemble_for(const geometry::Scenario& scen,
                                   const cohomology::GridOneForm& form,
                                   const NumericsConfig& nc) {
  if (const auto* t3 = dynamic_cast<const geometry::T3Linear*>(&scen)) {
    return measures::assemble_lp(measures::OccupationGrid::flat3(*t3, nc.grid_n), form,
                                 nc.delta_slack);
  }
  if (const auto* hopf = dynamic_cast<const geometry::HopfS3*>(&scen)) {
    return measures::assemble_lp(
        measures::OccupationGrid::fibration(*hopf, nc.grid_n, nc.grid_r, nc.grid_n), form,
        nc.delta_slack);
  }
  return measures::assemble_lp(
      measures::OccupationGrid::tube(scen, nc.grid_n, nc.grid_r, nc.grid_n), form,
      nc.delta_slack);
}

}  // namespace

RunReport run_scenario(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  RunReport rep;
  rep.config = cfg;
  const auto scen = cfg.make_scenario();

  if (cfg.scenario.kind == ScenarioKind::geodesic_s2) {
    const auto& geo = dynamic_cast<const geometry::GeodesicS2&>(*scen);
    section::AnnulusOptions ao;
    ao.n_samples = cfg.numerics.annulus_samples;
    ao.seed = cfg.numerics.seed;
    ao.tol = cfg.numerics.return_tol;
    rep.annulus = section::birkhoff_annulus_stats(geo, ao);
    rep.annulus_ran = true;
    rep.section_ms = ms_since(t0);
    const bool pass = rep.annulus.misses == 0 && rep.annulus.min_margin > 0.0 &&
                      rep.annulus.tau_max <= kTwoPi + 1e-3;
    rep.exit_code = pass ? 0 : 3;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "%s annulus: margin=%.6g τ_max=%.9g misses=%d/%d",
                  pass ? "VERIFIED" : "INCONCLUSIVE", rep.annulus.min_margin,
                  rep.annulus.tau_max, rep.annulus.misses, rep.annulus.samples);
    rep.verdict_line = buf;
    rep.total_ms = ms_since(t0);
    return rep;
  }

  const auto cls = cfg.make_class();
  measures::ConditionOptions copt;
  copt.grid_n = cfg.numerics.grid_n;
  copt.grid_r = cfg.numerics.grid_r;
  copt.delta_slack = cfg.numerics.delta_slack;
  copt.rotation.horizon_mult = cfg.numerics.rotation_horizon;
  rep.condition = measures::check_condition_iii(*scen, cls, copt);
  rep.condition_applicable = true;
  rep.condition_ms = ms_since(t0);

  const auto& cert = rep.condition.certificate;
  if (!rep.condition.rotation_holds) {
    rep.exit_code = 2;
    for (const auto& cc : rep.condition.components) {
      if (cc.positive) continue;
      char buf[200];
      std::snprintf(buf, sizeof(buf), "REFUTED ρ^y=%.6g at link component %d%s", cc.rho_y,
                    cc.component,
                    cc.generic_obstruction ? " (hyperbolic: generic obstruction)" : "");
      rep.verdict_line = buf;
      break;
    }
  } else if (cert.verdict == measures::Certificate::Verdict::refuted) {
    rep.exit_code = 2;
    rep.verdict_line = fmt("REFUTED μ·y=%.9g", cert.pairing_value);
  } else if (cert.verdict == measures::Certificate::Verdict::inconclusive) {
    rep.exit_code = 3;
    rep.verdict_line = fmt("INCONCLUSIVE margin=%.6g", cert.dual_margin) +
                       (cert.notes.empty() ? "" : " (" + cert.notes + ")");
  } else {
    const auto t1 = Clock::now();
    const cohomology::GridOneForm form = cls.representative(*scen);
    section::ProjectionOptions po;
    po.n0 = cfg.numerics.leaf_grid[0];
    po.n1 = cfg.numerics.leaf_grid[1];
    po.n2 = cfg.numerics.leaf_grid[2];
    const section::ProjectionField P(*scen, form, section_basepoint(cfg.scenario.kind), po);
    rep.leaf_level = P.pick_regular_level();
    rep.leaf = section::extract_leaf(P, rep.leaf_level);

    section::SectionVerdictOptions vo;
    vo.eps_star = cert.eps_star;
    vo.returns.n_samples = cfg.numerics.return_samples;
    vo.returns.eps_star = cert.eps_star;
    vo.returns.seed = cfg.numerics.seed;
    vo.returns.tol = cfg.numerics.return_tol;
    rep.section = section::verify_global_section(P, rep.leaf, vo);
    rep.section_ran = true;
    rep.section_ms = ms_since(t1);

    rep.exit_code = rep.section.pass ? 0 : 3;
    rep.verdict_line = rep.section.pass
                           ? fmt("CERTIFIED ε*=%.9g", cert.eps_star)
                           : fmt("INCONCLUSIVE ε*=%.9g but leaf verification failed",
                                 cert.eps_star);
  }

  rep.total_ms = ms_since(t0);
  return rep;
}

std::string lp_export_text(const RunConfig& cfg) {
  if (cfg.scenario.kind == ScenarioKind::geodesic_s2)
    throw ConfigError(cfg.name + ": the geodesic run poses no LP to export");
  const auto scen = cfg.make_scenario();
  const auto cls = cfg.make_class();
  cls.validate();
  const cohomology::GridOneForm form = cls.representative(*scen);
  // Only the self-contained Problem is serialized; the grid the assembly
  // points into may go out of scope afterwards.
  const auto lp = assemble_for(*scen, form, cfg.numerics);
  return lp::lp_text(lp.problem);
}

}  // namespace sos::runner
