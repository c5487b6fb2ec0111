#include "sos/section/returns.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sos/common/ode.hpp"
#include "sos/common/parallel.hpp"
#include "sos/common/rng.hpp"

namespace sos::section {

namespace {

using Kind = cohomology::GridOneForm::Kind;

struct DirectionalHit {
  bool found = false;
  double tau = 0.0;
};

// Drive the lift of pr across target_off (relative to the start, positive
// forward / negative backward) and locate the crossing time by bisection
// inside the bracketing step.  The lift is strictly monotone along the flow
// for a certified class, so the first crossing is the first return.
DirectionalHit hit_level(const geometry::Scenario& s, const cohomology::GridOneForm& form,
                         const StateVec& x0, double target_off, int dir, double cutoff,
                         double tol) {
  const int d = s.state_dim();
  StateVec y0(d + 1);
  y0.head(d) = x0;
  y0[d] = 0.0;

  OdeRhs rhs = [&s, &form, d, dir](double, const StateVec& y, StateVec& dy) {
    const StateVec x = y.head(d);
    const StateVec f = s.field(x);
    dy.resize(d + 1);
    dy.head(d) = dir * f;
    dy[d] = dir * form.covector(x).dot(f);
  };
  Projector project;
  if (s.has_constraint()) {
    project = [&s, d](StateVec& y) {
      StateVec x = y.head(d);
      s.project(x);
      y.head(d) = x;
    };
  }
  OdeOptions oo;
  oo.tol = tol;
  oo.per_unit_time = true;
  oo.max_step = 0.05 * s.characteristic_period();

  const bool upward = target_off > 0.0;
  auto crossed = [&](double lift) { return upward ? lift >= target_off : lift <= target_off; };

  double t_lo = 0.0, t_hi = 0.0;
  StateVec y_lo = y0, y_hi;
  bool bracketed = false;
  StepObserver watch = [&](double t0, const StateVec& a, double t1, const StateVec& b) {
    if (crossed(b[d])) {
      t_lo = t0;
      y_lo = a;
      t_hi = t1;
      y_hi = b;
      bracketed = true;
      return false;
    }
    return true;
  };
  try {
    integrate_rk45(rhs, 0.0, y0, cutoff, oo, project, watch);
  } catch (const std::domain_error&) {
    return {};  // left the chart before returning: a miss, not an error
  }
  if (!bracketed) return {};

  // Bisection keeping the state at the live left endpoint.
  for (int it = 0; it < 60 && t_hi - t_lo > 1e-12 * std::max(1.0, t_hi); ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    const StateVec y_mid = integrate_rk45(rhs, t_lo, y_lo, mid, oo, project).y;
    if (crossed(y_mid[d])) {
      t_hi = mid;
    } else {
      t_lo = mid;
      y_lo = y_mid;
    }
  }
  return {true, 0.5 * (t_lo + t_hi)};
}

StateVec sample_start(Kind kind, const geometry::Scenario& s, Rng& rng) {
  switch (kind) {
    case Kind::flat3: {
      StateVec p(3);
      p << rng.uniform(), rng.uniform(), rng.uniform();
      return p;
    }
    case Kind::tube: {
      StateVec p(3);
      p << rng.uniform() * s.characteristic_period(), 0.1 + 0.8 * rng.uniform(),
          rng.uniform() * kTwoPi;
      return p;
    }
    case Kind::fibration:
    default: {
      const double nu = 0.15 + 0.8 * rng.uniform();
      const double ss = rng.uniform() * kTwoPi;
      const double al = rng.uniform() * kTwoPi;
      const double r1 = std::sqrt(1.0 - nu * nu);
      StateVec p(4);
      p << r1 * std::cos(al + ss), r1 * std::sin(al + ss), nu * std::cos(ss), nu * std::sin(ss);
      return p;
    }
  }
}

}  // namespace

ReturnStats return_time_stats(const ProjectionField& P, double level, const ReturnOptions& opt) {
  double cutoff = opt.cutoff;
  if (cutoff <= 0.0) {
    if (opt.eps_star <= 0.0) {
      throw ClassError("return times: cutoff needs a certified eps_star or an explicit value");
    }
    cutoff = 10.0 / opt.eps_star;
  }
  const geometry::Scenario& s = P.scenario();
  const cohomology::GridOneForm& form = P.form();
  const int n = opt.n_samples;

  std::vector<double> tf(n, 0.0), tb(n, 0.0);
  std::vector<char> ok(n, 0);
  const Rng base(opt.seed);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    Rng rng = base.fork(i);
    const StateVec x0 = sample_start(P.kind(), s, rng);
    const double pr0 = P.value(x0);
    double off_f = wrap_into(level - pr0, 1.0);
    if (off_f < 1e-12) off_f = 1.0;
    double off_b = wrap_into(pr0 - level, 1.0);
    if (off_b < 1e-12) off_b = 1.0;
    const DirectionalHit fwd = hit_level(s, form, x0, off_f, +1, cutoff, opt.tol);
    const DirectionalHit bwd = hit_level(s, form, x0, -off_b, -1, cutoff, opt.tol);
    if (fwd.found && bwd.found) {
      ok[i] = 1;
      tf[i] = fwd.tau;
      tb[i] = bwd.tau;
    }
  });

  ReturnStats st;
  st.samples = n;
  st.taus.reserve(static_cast<std::size_t>(n));
  double sum = 0.0;
  double tmin = 1e300, tmax = 0.0, fmax = 0.0, bmax = 0.0;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    if (!ok[i]) {
      ++st.misses;
      continue;
    }
    ++hits;
    const double tau = tf[i] + tb[i];
    st.taus.push_back(tau);
    sum += tau;
    tmin = std::min(tmin, tau);
    tmax = std::max(tmax, tau);
    fmax = std::max(fmax, tf[i]);
    bmax = std::max(bmax, tb[i]);
  }
  if (hits > 0) {
    st.tau_min = tmin;
    st.tau_mean = sum / hits;
    st.tau_max = tmax;
    st.tau_forward_max = fmax;
    st.tau_back_max = bmax;
  }
  return st;
}

}  // namespace sos::section
