#include "sos/section/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sos/common/ode.hpp"
#include "sos/common/parallel.hpp"
#include "sos/common/rng.hpp"

namespace sos::section {

namespace {

double gaussian(Rng& rng) {
  const double u1 = std::max(rng.uniform(), 1e-300);
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

StateVec random_unit_tangent(Rng& rng) {
  Vec3 x(gaussian(rng), gaussian(rng), gaussian(rng));
  x.normalize();
  Vec3 w(gaussian(rng), gaussian(rng), gaussian(rng));
  Vec3 v = w - x.dot(w) * x;
  while (v.norm() < 1e-8) {
    w = Vec3(gaussian(rng), gaussian(rng), gaussian(rng));
    v = w - x.dot(w) * x;
  }
  v.normalize();
  StateVec p(6);
  p << x[0], x[1], x[2], v[0], v[1], v[2];
  return p;
}

struct Crossing {
  bool found = false;
  double tau = 0.0;
  double margin = 0.0;  // upward speed v3 at the crossing
};

// First upward crossing of {x3 = 0}: bracket a sign change - -> + of x3 on an
// accepted step, then bisect.  Steps stay far below the half-oscillation of
// x3 along a great circle, so each step holds at most one zero.
Crossing first_upward_crossing(const geometry::GeodesicS2& s, const StateVec& p0, double cutoff,
                               double tol) {
  OdeRhs rhs = [&s](double, const StateVec& y, StateVec& dy) { dy = s.field(y); };
  Projector project = [&s](StateVec& y) { s.project(y); };
  OdeOptions oo;
  oo.tol = tol;
  oo.per_unit_time = true;
  oo.max_step = 0.1;

  double t_lo = 0.0, t_hi = 0.0;
  StateVec y_lo = p0, y_hi;
  bool bracketed = false;
  StepObserver watch = [&](double t0, const StateVec& a, double t1, const StateVec& b) {
    if (a[2] < 0.0 && b[2] > 0.0) {
      t_lo = t0;
      y_lo = a;
      t_hi = t1;
      y_hi = b;
      bracketed = true;
      return false;
    }
    return true;
  };
  integrate_rk45(rhs, 0.0, p0, cutoff, oo, project, watch);
  if (!bracketed) return {};

  StateVec y_mid = y_hi;
  for (int it = 0; it < 50 && t_hi - t_lo > 1e-12; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    y_mid = integrate_rk45(rhs, t_lo, y_lo, mid, oo, project).y;
    if (y_mid[2] > 0.0) {
      t_hi = mid;
      y_hi = y_mid;
    } else {
      t_lo = mid;
      y_lo = y_mid;
    }
  }
  Crossing c;
  c.found = true;
  c.tau = 0.5 * (t_lo + t_hi);
  c.margin = y_hi[5];
  return c;
}

}  // namespace

AnnulusStats birkhoff_annulus_stats(const geometry::GeodesicS2& s, const AnnulusOptions& opt) {
  const int n = opt.n_samples;
  std::vector<Crossing> hits(static_cast<std::size_t>(n));
  const Rng base(opt.seed);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    Rng rng = base.fork(i);
    hits[i] = first_upward_crossing(s, random_unit_tangent(rng), opt.cutoff, opt.tol);
  });

  AnnulusStats st;
  st.samples = n;
  st.taus.reserve(static_cast<std::size_t>(n));
  double sum = 0.0, tmin = 1e300, tmax = 0.0, mmin = 1e300;
  int found = 0;
  for (const auto& c : hits) {
    if (!c.found) {
      ++st.misses;
      continue;
    }
    ++found;
    st.taus.push_back(c.tau);
    sum += c.tau;
    tmin = std::min(tmin, c.tau);
    tmax = std::max(tmax, c.tau);
    mmin = std::min(mmin, c.margin);
  }
  if (found > 0) {
    st.tau_min = tmin;
    st.tau_mean = sum / found;
    st.tau_max = tmax;
    st.min_margin = mmin;
  }
  return st;
}

}  // namespace sos::section
