#include "sos/measures/condition.hpp"

#include <cmath>

#include "sos/boundary/framing.hpp"
#include "sos/boundary/torus_field.hpp"
#include "sos/orbit/orbit.hpp"

namespace sos::measures {

using cohomology::DualClass;
using cohomology::GridOneForm;
using geometry::Scenario;

ConditionReport check_condition_iii(const Scenario& s, const DualClass& cls,
                                    const ConditionOptions& opt) {
  cls.validate();
  ConditionReport rep;

  const auto link = s.link();
  if (cls.is_interior()) {
    // closed chart: the link is empty and the rotation requirement is vacuous
    rep.rotation_holds = true;
  } else {
    if (link.empty())
      throw ClassError("condition check: boundary class on a scenario without a link");
    rep.rotation_holds = true;
    for (std::size_t j = 0; j < link.size(); ++j) {
      auto orb = orbit::refine_periodic_orbit(s, link[j].seed, link[j].period_guess);
      auto frame = s.tubular_frame(static_cast<int>(j));
      auto block = orbit::transverse_block(s, orb, *frame);
      auto torus = boundary::BoundaryTorusField::from_block(block);
      auto rot = boundary::estimate_rotation(torus, opt.rotation);

      const auto& bc = cls.coeffs(static_cast<int>(j) < cls.components()
                                      ? static_cast<int>(j)
                                      : 0);
      ComponentCheck cc;
      cc.component = static_cast<int>(j);
      cc.period = orb.period;
      cc.rho_theta = rot.value;
      cc.rho_theta_error = rot.error_bound;
      cc.rho_y = boundary::rho_y(bc.p, bc.q, orb.period, rot.value);
      cc.positive = cc.rho_y > 1e-9;
      const auto klass = orbit::classify_orbit(block.multipliers);
      cc.orbit_class = orbit::to_string(klass);
      cc.generic_obstruction = !cc.positive && std::abs(cc.rho_y) <= 1e-9 &&
                               klass == orbit::OrbitClass::hyperbolic;
      cc.multipliers = block.multipliers;
      cc.rotation = rot;
      cc.field = torus;
      rep.components.push_back(cc);
      rep.rotation_holds = rep.rotation_holds && cc.positive;
    }
  }

  GridOneForm form = cls.representative(s);
  if (const auto* t3 = dynamic_cast<const geometry::T3Linear*>(&s)) {
    auto grid = OccupationGrid::flat3(*t3, opt.grid_n);
    rep.certificate = certify_positivity(assemble_lp(grid, form, opt.delta_slack),
                                         opt.solve);
  } else if (const auto* hopf = dynamic_cast<const geometry::HopfS3*>(&s)) {
    auto grid = OccupationGrid::fibration(*hopf, opt.grid_n, opt.grid_r, opt.grid_n);
    rep.certificate = certify_positivity(assemble_lp(grid, form, opt.delta_slack),
                                         opt.solve);
  } else {
    auto grid = OccupationGrid::tube(s, opt.grid_n, opt.grid_r, opt.grid_n);
    rep.certificate = certify_positivity(assemble_lp(grid, form, opt.delta_slack),
                                         opt.solve);
  }
  rep.cone_holds = rep.certificate.verdict == Certificate::Verdict::certified;
  rep.holds = rep.rotation_holds && rep.cone_holds;
  return rep;
}

}  // namespace sos::measures
