#include "sos/section/leaf_checks.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace sos::section {

namespace {

using Kind = cohomology::GridOneForm::Kind;

StateVec hopf_embed(double s, double nu, double alpha) {
  const double r1 = std::sqrt(std::max(0.0, 1.0 - nu * nu));
  StateVec p(4);
  p << r1 * std::cos(alpha + s), r1 * std::sin(alpha + s), nu * std::cos(s), nu * std::sin(s);
  return p;
}

}  // namespace

TransversalityReport verify_transversality(const ProjectionField& P, const SectionLeaf& leaf,
                                           double margin_floor) {
  TransversalityReport rep;
  rep.faces = static_cast<int>(leaf.faces.size());
  rep.min_margin = 1e300;
  for (const auto& f : leaf.faces) {
    const StateVec& u = leaf.vertices[f[0]];
    const StateVec d1 = anchored_delta(P, u, leaf.vertices[f[1]]);
    const StateVec d2 = anchored_delta(P, u, leaf.vertices[f[2]]);
    StateVec c = u + (d1 + d2) / 3.0;
    for (int ax = 0; ax < 3; ++ax) {
      if (P.periodic(ax)) c[ax] = wrap_into(c[ax], P.span(ax));
    }
    double margin;
    if (P.kind() == Kind::fibration) {
      const double nu = std::min(1.0, std::max(0.0, c[1]));
      margin = nu < 1e-9 ? P.form().chart_covector()[0]  // on the blow-up torus the rate is exact
                         : P.form().beta_of_X(P.scenario(), hopf_embed(c[0], nu, c[2]));
    } else {
      if (!P.radial()) {
        for (int ax = 0; ax < 3; ++ax) c[ax] = wrap_into(c[ax], P.span(ax));
      } else {
        c[1] = std::min(1.0, std::max(0.0, c[1]));
      }
      margin = P.form().beta_of_X(P.scenario(), c);
    }
    rep.min_margin = std::min(rep.min_margin, margin);
    if (margin < margin_floor) ++rep.below;
  }
  if (rep.faces == 0) rep.min_margin = 0.0;
  rep.pass = rep.faces > 0 && rep.below == 0;
  return rep;
}

bool verify_boundary_winding(const ProjectionField& P, const SectionLeaf& leaf) {
  if (!P.radial()) return leaf.boundary.empty() && leaf.wall.empty();
  const auto restriction = P.form().boundary_restriction();
  const int eps = static_cast<int>(std::lround(kTwoPi * restriction.q));
  if (leaf.boundary.size() != 1) return false;  // one circle per blow-up torus
  for (const auto& c : leaf.boundary) {
    if (c.n2 != 0 || c.n1 != eps) return false;
  }
  return true;
}

std::vector<DegreeRow> verify_degree(
    const ProjectionField& P,
    const std::vector<std::pair<std::string, std::vector<StateVec>>>& loops) {
  std::vector<DegreeRow> rows;
  rows.reserve(loops.size());
  for (const auto& [label, loop] : loops) {
    DegreeRow row;
    row.label = label;
    double winding = 0.0;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
      winding += circle_diff(P.value(loop[i + 1]), P.value(loop[i]), 1.0);
    }
    row.degree = static_cast<int>(std::lround(winding));
    row.pairing = P.form().pair_loop(loop);
    row.match = std::abs(winding - row.degree) <= 1e-6 &&
                std::abs(row.pairing - row.degree) <= 1e-6;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::pair<std::string, std::vector<StateVec>>> basis_loops(const ProjectionField& P) {
  const int n = 256;
  std::vector<std::pair<std::string, std::vector<StateVec>>> out;
  switch (P.kind()) {
    case Kind::flat3: {
      for (int axis = 0; axis < 3; ++axis) {
        std::vector<StateVec> loop;
        loop.reserve(n + 1);
        for (int i = 0; i <= n; ++i) {
          StateVec p(3);
          p << 0.31, 0.47, 0.59;
          p[axis] = wrap_into(p[axis] + static_cast<double>(i) / n, 1.0);
          loop.push_back(p);
        }
        out.emplace_back("axis" + std::to_string(axis + 1), std::move(loop));
      }
      break;
    }
    case Kind::tube: {
      const double T = P.span(0);
      std::vector<StateVec> meridian, longitude;
      for (int i = 0; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        StateVec m(3), l(3);
        m << 0.37 * T, 0.5, wrap_into(kTwoPi * u, kTwoPi);
        l << wrap_into(T * u, T), 0.5, 1.1;
        meridian.push_back(m);
        longitude.push_back(l);
      }
      out.emplace_back("meridian", std::move(meridian));
      out.emplace_back("longitude", std::move(longitude));
      break;
    }
    case Kind::fibration: {
      std::vector<StateVec> meridian, longitude;
      for (int i = 0; i <= n; ++i) {
        const double u = kTwoPi * static_cast<double>(i) / n;
        // meridian: second coordinate winds once while the first stays frozen
        meridian.push_back(hopf_embed(u, 0.55, wrap_into(0.8 - u, kTwoPi)));
        // longitude: a fiber direction loop, second coordinate frozen
        longitude.push_back(hopf_embed(0.9, 0.55, wrap_into(u, kTwoPi)));
      }
      out.emplace_back("meridian", std::move(meridian));
      out.emplace_back("longitude", std::move(longitude));
      break;
    }
  }
  return out;
}

SectionVerdict verify_global_section(const ProjectionField& P, const SectionLeaf& leaf,
                                     const SectionVerdictOptions& opt) {
  SectionVerdict v;
  v.transversality = verify_transversality(P, leaf, opt.eps_star / 2.0);
  if (!v.transversality.pass) {
    v.notes.push_back("transversality: " + std::to_string(v.transversality.below) +
                      " faces below half the certified margin");
  }
  v.winding_ok = verify_boundary_winding(P, leaf);
  if (!v.winding_ok) v.notes.push_back("boundary winding differs from the class coefficients");
  v.degrees = verify_degree(P, basis_loops(P));
  v.degree_ok = !v.degrees.empty();
  for (const auto& row : v.degrees) {
    if (!row.match) {
      v.degree_ok = false;
      v.notes.push_back("degree mismatch on " + row.label);
    }
  }
  v.surjective = P.surjective(64);
  if (!v.surjective) v.notes.push_back("projection misses part of the circle");
  bool returns_ok = true;
  if (opt.run_returns) {
    ReturnOptions ro = opt.returns;
    if (ro.eps_star <= 0.0) ro.eps_star = opt.eps_star;
    v.returns = return_time_stats(P, leaf.level, ro);
    returns_ok = v.returns.misses == 0 && v.returns.tau_min > 0.0;
    if (!returns_ok) {
      v.notes.push_back("return map: " + std::to_string(v.returns.misses) + " misses");
    }
  }
  v.pass = v.transversality.pass && v.winding_ok && v.degree_ok && v.surjective && returns_ok;
  return v;
}

}  // namespace sos::section
