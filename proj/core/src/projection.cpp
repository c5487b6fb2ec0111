#include "sos/section/projection.hpp"

#include <cmath>
#include <vector>

namespace sos::section {

namespace {

double frac(double x) { return wrap_into(x, 1.0); }

// Midpoint-of-gradient consistency probe: a potential whose gradient callable
// drifts from its value callable breaks closedness of the corrected form, so
// reject it before any leaf geometry is built on top.
void check_potential_consistency(const cohomology::GridOneForm& form, double span0, double span2) {
  if (!form.has_potential()) return;
  const auto& pot = *form.potential();
  const double h = 1e-3;
  std::vector<StateVec> probes;
  for (double a : {0.15, 0.45, 0.85}) {
    for (double b : {0.3, 0.6, 0.9}) {
      StateVec p(3);
      p << a * span0, b, 0.7 * span2 * a + 0.2;
      probes.push_back(p);
    }
  }
  for (const auto& p : probes) {
    for (int axis = 0; axis < 3; ++axis) {
      StateVec q = p;
      q[axis] += h;
      const double dv = pot.value(q) - pot.value(p);
      const double trap = 0.5 * (pot.gradient(q)[axis] + pot.gradient(p)[axis]) * h;
      if (std::abs(dv - trap) > 1e-6) {
        throw ClassError("projection: potential gradient disagrees with its values");
      }
    }
  }
}

}  // namespace

ProjectionField::ProjectionField(const geometry::Scenario& s, const cohomology::GridOneForm& eta,
                                 const StateVec& basepoint, const ProjectionOptions& opt)
    : scen_(&s), form_(eta) {
  using Kind = cohomology::GridOneForm::Kind;
  switch (form_.kind()) {
    case Kind::flat3:
      n_[0] = opt.n0 > 0 ? opt.n0 : 64;
      n_[1] = opt.n1 > 0 ? opt.n1 : 64;
      n_[2] = opt.n2 > 0 ? opt.n2 : 64;
      span_[0] = span_[1] = span_[2] = 1.0;
      per_[0] = per_[1] = per_[2] = true;
      radial_ = false;
      break;
    case Kind::tube:
      n_[0] = opt.n0 > 0 ? opt.n0 : 24;
      n_[1] = opt.n1 > 0 ? opt.n1 : 12;
      n_[2] = opt.n2 > 0 ? opt.n2 : 96;
      span_[0] = form_.period();
      span_[1] = 1.0;
      span_[2] = kTwoPi;
      per_[0] = true;
      per_[1] = false;
      per_[2] = true;
      radial_ = true;
      break;
    case Kind::fibration:
      n_[0] = opt.n0 > 0 ? opt.n0 : 96;
      n_[1] = opt.n1 > 0 ? opt.n1 : 12;
      n_[2] = opt.n2 > 0 ? opt.n2 : 24;
      span_[0] = kTwoPi;
      span_[1] = 1.0;
      span_[2] = kTwoPi;
      per_[0] = true;
      per_[1] = false;
      per_[2] = true;
      radial_ = true;
      break;
  }
  for (int a = 0; a < 3; ++a) {
    if (n_[a] < 2) throw ClassError("projection: lattice needs at least 2 cells per axis");
    dim_[a] = n_[a];
  }
  if (radial_) dim_[1] = n_[1] + 1;

  if (form_.closedness_residual() > 1e-8) {
    throw ClassError("projection: one-form is not closed to tolerance");
  }
  check_potential_consistency(form_, span_[0], span_[2]);

  if (form_.kind() == Kind::fibration) {
    if (basepoint.size() != 4) {
      throw ClassError("projection: fibration basepoint must be an ambient 4-vector");
    }
    const double r2 = std::hypot(basepoint[2], basepoint[3]);
    if (r2 < 1e-9) throw ClassError("projection: basepoint sits on the link fiber");
    base_chart_ = StateVec(3);
    base_chart_ << std::atan2(basepoint[3], basepoint[2]), r2, 0.0;
    base_potential_ = 0.0;
  } else {
    if (basepoint.size() != 3) throw ClassError("projection: basepoint must be a chart 3-vector");
    base_chart_ = basepoint;
    base_potential_ = form_.has_potential() ? form_.potential()->value(basepoint) : 0.0;
  }

  pr_.resize(static_cast<std::size_t>(dim_[0]) * dim_[1] * dim_[2]);
  for (int i = 0; i < dim_[0]; ++i) {
    for (int j = 0; j < dim_[1]; ++j) {
      for (int k = 0; k < dim_[2]; ++k) {
        const std::size_t idx = (static_cast<std::size_t>(i) * dim_[1] + j) * dim_[2] + k;
        pr_[idx] = frac(raw_chart_value(node(i, j, k)));
      }
    }
  }
}

StateVec ProjectionField::node(int i, int j, int k) const {
  StateVec p(3);
  p[0] = span_[0] * static_cast<double>(i) / n_[0];
  p[1] = radial_ ? static_cast<double>(j) / n_[1] : span_[1] * static_cast<double>(j) / n_[1];
  p[2] = span_[2] * static_cast<double>(k) / n_[2];
  return p;
}

double ProjectionField::node_value(int i, int j, int k) const {
  const std::size_t idx = (static_cast<std::size_t>(i) * dim_[1] + j) * dim_[2] + k;
  return pr_[idx];
}

double ProjectionField::raw_chart_value(const StateVec& c) const {
  const Vec3 cc = form_.chart_covector();
  if (form_.kind() == cohomology::GridOneForm::Kind::fibration) {
    return cc[0] * (c[0] - base_chart_[0]);
  }
  double raw = 0.0;
  for (int a = 0; a < 3; ++a) raw += cc[a] * (c[a] - base_chart_[a]);
  if (form_.has_potential()) raw += form_.potential()->value(c) - base_potential_;
  return raw;
}

double ProjectionField::chart_value(const StateVec& c) const { return frac(raw_chart_value(c)); }

double ProjectionField::value(const StateVec& state) const {
  if (form_.kind() == cohomology::GridOneForm::Kind::fibration) {
    const double r2 = std::hypot(state[2], state[3]);
    if (r2 < 1e-12) throw std::domain_error("projection undefined on the link fiber");
    StateVec c(3);
    c << std::atan2(state[3], state[2]), r2, 0.0;
    return chart_value(c);
  }
  return chart_value(state);
}

double ProjectionField::integrate_along(const std::vector<StateVec>& chart_path) const {
  if (chart_path.size() < 2) return 0.0;
  const Vec3 cc = form_.chart_covector();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < chart_path.size(); ++i) {
    const StateVec& a = chart_path[i];
    const StateVec& b = chart_path[i + 1];
    for (int ax = 0; ax < 3; ++ax) acc += cc[ax] * (b[ax] - a[ax]);
    if (form_.has_potential()) acc += form_.potential()->value(b) - form_.potential()->value(a);
  }
  return acc;
}

bool ProjectionField::surjective(int bins) const {
  std::vector<int> hist(static_cast<std::size_t>(bins), 0);
  for (double v : pr_) {
    int b = static_cast<int>(std::floor(v * bins));
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    ++hist[static_cast<std::size_t>(b)];
  }
  for (int c : hist) {
    if (c == 0) return false;
  }
  return true;
}

double ProjectionField::min_node_distance(double level) const {
  double best = 0.5;
  for (double v : pr_) best = std::min(best, std::abs(circle_diff(v, level, 1.0)));
  return best;
}

double ProjectionField::pick_regular_level(int candidates) const {
  // Irrational phase keeps candidates off the rational node values that a
  // uniform lattice produces for the plain class forms.
  const double phase = 0.5 * (std::sqrt(5.0) - 1.0);
  double best_level = 0.0;
  double best_dist = -1.0;
  for (int m = 0; m < candidates; ++m) {
    const double x = wrap_into((m + phase) / candidates, 1.0);
    const double d = min_node_distance(x);
    if (d > best_dist) {
      best_dist = d;
      best_level = x;
    }
  }
  return best_level;
}

}  // namespace sos::section
