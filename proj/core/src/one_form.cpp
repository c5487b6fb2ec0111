#include "sos/cohomology/one_form.hpp"

#include <cmath>

namespace sos::cohomology {

using geometry::Scenario;

GridOneForm GridOneForm::flat3(const Vec3& y) {
  GridOneForm f;
  f.kind_ = Kind::flat3;
  f.flat_ = y;
  return f;
}

GridOneForm GridOneForm::tube(double p, double q, double period) {
  if (!(period > 0.0)) throw ClassError("GridOneForm: tube period must be positive");
  GridOneForm f;
  f.kind_ = Kind::tube;
  f.p_ = p;
  f.q_ = q;
  f.period_ = period;
  return f;
}

GridOneForm GridOneForm::fibration(int eps) {
  if (eps != 1 && eps != -1) throw ClassError("GridOneForm: fibration sign must be +-1");
  GridOneForm f;
  f.kind_ = Kind::fibration;
  f.eps_ = eps;
  return f;
}

GridOneForm GridOneForm::with_potential(Potential pot) const {
  if (kind_ == Kind::fibration)
    throw ClassError("GridOneForm: potentials are only supported on chart-coordinate kinds");
  if (kind_ == Kind::tube) {
    // the collar r < 0.2 must keep the exact coefficients (p, 0, q)
    for (double r : {0.0, 0.05, 0.1, 0.19})
      for (double t : {0.0, 0.31 * period_, 0.77 * period_})
        for (double theta : {0.4, 2.9, 5.1}) {
          StateVec x(3);
          x << t, r, theta;
          if (std::abs(pot.value(x)) > 1e-12)
            throw ClassError("GridOneForm: potential does not vanish on the collar");
        }
  }
  GridOneForm f = *this;
  f.potential_ = std::move(pot);
  return f;
}

StateVec GridOneForm::covector(const StateVec& x) const {
  StateVec c;
  switch (kind_) {
    case Kind::flat3:
      c = StateVec(3);
      c << flat_[0], flat_[1], flat_[2];
      break;
    case Kind::tube:
      c = StateVec(3);
      c << p_, 0.0, q_;
      break;
    case Kind::fibration: {
      const double r2 = x[2] * x[2] + x[3] * x[3];
      if (r2 < 1e-20)
        throw std::domain_error("GridOneForm: angular form undefined on the fiber");
      c = StateVec(4);
      c << 0.0, 0.0, -x[3] / r2, x[2] / r2;
      c *= eps_ / kTwoPi;
      break;
    }
  }
  if (potential_) c += potential_->gradient(x);
  return c;
}

Vec3 GridOneForm::chart_covector() const {
  switch (kind_) {
    case Kind::flat3: return flat_;
    case Kind::tube: return Vec3(p_, 0.0, q_);
    default: return Vec3(eps_ / kTwoPi, 0.0, 0.0);  // (s, nu, alpha) chart
  }
}

double GridOneForm::beta_of_X(const Scenario& s, const StateVec& x) const {
  return covector(x).dot(s.field(x));
}

StateVec GridOneForm::segment_delta(const StateVec& a, const StateVec& b) const {
  StateVec d = b - a;
  switch (kind_) {
    case Kind::flat3:
      for (int i = 0; i < 3; ++i) d[i] = circle_diff(b[i], a[i], 1.0);
      break;
    case Kind::tube:
      d[0] = circle_diff(b[0], a[0], period_);
      d[2] = circle_diff(b[2], a[2], kTwoPi);
      break;
    case Kind::fibration:
      break;  // ambient coordinates carry no deck identifications
  }
  return d;
}

bool GridOneForm::loop_closed(const StateVec& first, const StateVec& last) const {
  return segment_delta(last, first).norm() <= 1e-8;
}

double GridOneForm::pair_loop(const std::vector<StateVec>& loop) const {
  if (loop.size() < 3) throw std::domain_error("pair_loop: need at least 3 samples");
  if (!loop_closed(loop.front(), loop.back()))
    throw std::domain_error("pair_loop: path endpoints do not match");

  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const StateVec& a = loop[i];
    const StateVec& b = loop[i + 1];
    switch (kind_) {
      case Kind::flat3: {
        StateVec d = segment_delta(a, b);
        sum += flat_[0] * d[0] + flat_[1] * d[1] + flat_[2] * d[2];
        break;
      }
      case Kind::tube: {
        StateVec d = segment_delta(a, b);
        sum += p_ * d[0] + q_ * d[2];
        break;
      }
      case Kind::fibration: {
        // increment of arg z2 along the segment
        double cross = a[2] * b[3] - a[3] * b[2];
        double dot = a[2] * b[2] + a[3] * b[3];
        sum += eps_ / kTwoPi * std::atan2(cross, dot);
        break;
      }
    }
  }
  // an exact-differential correction telescopes to zero around a closed loop
  return sum;
}

double GridOneForm::sup_beta_of_X(const Scenario& s, int per_axis) const {
  double bound = 0.0;
  auto visit = [&](const StateVec& x) {
    bound = std::max(bound, std::abs(beta_of_X(s, x)));
  };
  const int n = per_axis;
  if (kind_ == Kind::fibration) {
    for (int i = 0; i < n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 0; k < n; ++k) {
          double ss = kTwoPi * i / n;
          double nu = static_cast<double>(j) / n;
          double al = kTwoPi * k / n;
          StateVec z(4);
          z << std::sqrt(1.0 - nu * nu) * std::cos(al + ss),
              std::sqrt(1.0 - nu * nu) * std::sin(al + ss), nu * std::cos(ss),
              nu * std::sin(ss);
          visit(z);
        }
    return bound;
  }
  const double lt = kind_ == Kind::tube ? period_ : 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        StateVec x(3);
        if (kind_ == Kind::tube)
          x << lt * i / n, static_cast<double>(j) / std::max(1, n - 1),
              kTwoPi * k / n;
        else
          x << static_cast<double>(i) / n, static_cast<double>(j) / n,
              static_cast<double>(k) / n;
        if (s.in_domain(x)) visit(x);
      }
  return bound;
}

double GridOneForm::closedness_residual() const {
  // The fixed coefficients are constant in the canonical chart, so their
  // circulation around any chart plaquette vanishes identically; the
  // potential contributes exact value differences that telescope.  What is
  // measured here is the floating-point remainder of that cancellation.
  if (kind_ == Kind::fibration) return 0.0;
  const Vec3 cc = chart_covector();
  auto edge = [&](const StateVec& u, const StateVec& v) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += cc[i] * (v[i] - u[i]);
    if (potential_) s += potential_->value(v) - potential_->value(u);
    return s;
  };
  double worst = 0.0;
  const double lt = kind_ == Kind::tube ? period_ : 1.0;
  const double lth = kind_ == Kind::tube ? kTwoPi : 1.0;
  for (double h : {0.08, 0.013}) {
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        for (int ib = 0; ib < 4; ++ib) {
          StateVec x(3);
          x << (0.11 + 0.19 * ib) * lt, 0.23 + 0.034 * ib, (0.31 + 0.13 * ib) * lth;
          StateVec c0 = x, c1 = x, c2 = x, c3 = x;
          c1[a] += h;
          c2[a] += h;
          c2[b] += h;
          c3[b] += h;
          double circ = edge(c0, c1) + edge(c1, c2) + edge(c2, c3) + edge(c3, c0);
          worst = std::max(worst, std::abs(circ) / (2.0 * h));
        }
  }
  return worst;
}

GridOneForm::TorusRestriction GridOneForm::boundary_restriction() const {
  switch (kind_) {
    case Kind::tube: return {p_, q_};
    case Kind::fibration: return {0.0, eps_ / kTwoPi};
    default: throw ClassError("GridOneForm: flat chart has no boundary torus");
  }
}

}  // namespace sos::cohomology
