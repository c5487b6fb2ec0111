#include "sos/orbit/orbit.hpp"

#include <cmath>
#include <limits>

namespace sos::orbit {

namespace {

using geometry::Scenario;

OdeRhs make_rhs(const Scenario& s) {
  return [&s](double, const StateVec& y, StateVec& dy) { dy = s.field(y); };
}

// Projection without wrapping: refinement integrates in unwrapped angular
// coordinates so plane-crossing functions stay continuous.
Projector make_projector(const Scenario& s) {
  if (!s.has_constraint()) return {};
  return [&s](StateVec& y) { s.project(y); };
}

// Rounds a displacement to the deck lattice (integer multiples of the angular
// periods); the remainder is the geometric displacement.
StateVec deck_round(const Scenario& s, const StateVec& delta) {
  StateVec periods = s.angular_periods();
  StateVec off = delta;
  off.setZero();
  for (int i = 0; i < delta.size(); ++i)
    if (periods[i] > 0.0) off[i] = periods[i] * std::round(delta[i] / periods[i]);
  return off;
}

struct Crossing {
  bool found = false;
  double time = 0.0;
  StateVec point;
};

// First upward crossing of s(t) = n . (y(t) - base - drift) in the window
// [lo, hi], refined by bisection from the bracketing step.
Crossing find_plane_crossing(const Scenario& s, const StateVec& p0, const StateVec& base,
                             const StateVec& n, const StateVec& drift, double lo, double hi,
                             const OdeOptions& ode) {
  Crossing out;
  auto sval = [&](const StateVec& y) { return n.dot(y - base - drift); };

  double t_prev = 0.0;
  StateVec y_prev = p0;
  double s_prev = sval(p0);
  bool bracketed = false;
  double tb0 = 0.0, tb1 = 0.0;
  StateVec yb0;

  auto observe = [&](double t0, const StateVec& y0, double t1, const StateVec& y1) {
    (void)t0;
    (void)y0;
    double s1 = sval(y1);
    if (t1 > lo && t_prev >= lo && s_prev <= 0.0 && s1 > 0.0) {
      bracketed = true;
      tb0 = t_prev;
      tb1 = t1;
      yb0 = y_prev;
      return false;
    }
    t_prev = t1;
    y_prev = y1;
    s_prev = s1;
    return true;
  };

  try {
    integrate_rk45(make_rhs(s), 0.0, p0, hi, ode, make_projector(s), observe);
  } catch (const std::domain_error&) {
    return out;
  }
  if (!bracketed) return out;

  // bisection on the crossing time, re-integrating from the bracket start
  StateVec y_lo = yb0;
  double t_lo = tb0, t_hi = tb1;
  StateVec y_hi;
  for (int it = 0; it < 60 && (t_hi - t_lo) > 1e-13 * std::max(1.0, t_hi); ++it) {
    double tm = 0.5 * (t_lo + t_hi);
    OdeResult r = integrate_rk45(make_rhs(s), t_lo, y_lo, tm, ode, make_projector(s));
    if (sval(r.y) <= 0.0) {
      t_lo = tm;
      y_lo = r.y;
    } else {
      t_hi = tm;
      y_hi = r.y;
    }
  }
  OdeResult fin = integrate_rk45(make_rhs(s), t_lo, y_lo, t_hi, ode, make_projector(s));
  out.found = true;
  out.time = t_hi;
  out.point = fin.y;
  return out;
}

// Orthonormal basis of the orthogonal complement of v, from the Householder
// reflection that maps v to a coordinate axis.
MatX complement_basis(const StateVec& v) {
  const int d = static_cast<int>(v.size());
  Eigen::MatrixXd col(d, 1);
  col.col(0) = v;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(col);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  MatX out(d, d - 1);
  out = q.rightCols(d - 1);
  return out;
}

// Shared tail of the refinement: residual, primitive-period check, and
// uniform-time sampling along the closed orbit.
PeriodicOrbit finalize_orbit(const Scenario& s, const StateVec& p, double period,
                             const StateVec& endpoint, int iterations,
                             const RefineOptions& opt, int n_samples) {
  PeriodicOrbit orbit;
  orbit.period = period;
  orbit.anchor = s.wrap(p);
  orbit.iterations = iterations;
  orbit.residual = s.distance(s.wrap(endpoint), s.wrap(p));

  for (int div = 2; div <= opt.primitive_max_divisor; ++div) {
    OdeResult part = integrate_rk45(make_rhs(s), 0.0, p, orbit.period / div, opt.ode,
                                    make_projector(s));
    if (s.distance(s.wrap(part.y), s.wrap(p)) < opt.primitive_tol)
      throw RefinementError("refine_periodic_orbit: period is not primitive (T/" +
                            std::to_string(div) + " already returns)");
  }

  orbit.samples.reserve(n_samples);
  StateVec y = p;
  orbit.samples.push_back(s.wrap(y));
  const double h = orbit.period / n_samples;
  for (int i = 1; i < n_samples; ++i) {
    OdeResult seg = integrate_rk45(make_rhs(s), 0.0, y, h, opt.ode, make_projector(s));
    y = seg.y;
    orbit.samples.push_back(s.wrap(y));
  }
  return orbit;
}

}  // namespace

PeriodicOrbit refine_periodic_orbit(const Scenario& s, const StateVec& seed,
                                    double period_guess, const RefineOptions& opt,
                                    int n_samples) {
  if (!(period_guess > 0.0))
    throw RefinementError("refine_periodic_orbit: period guess must be positive");
  StateVec p0 = seed;
  if (s.has_constraint()) s.project(p0);
  if (!s.in_domain(p0))
    throw RefinementError("refine_periodic_orbit: seed lies outside the atlas");

  StateVec x0 = s.field(p0);
  StateVec n = x0 / x0.norm();
  MatX basis = complement_basis(x0);
  const int k = static_cast<int>(basis.cols());

  // A seed that is already periodic is accepted directly by locating the
  // minimum of the recurrence distance d(t) = dist(flow_t(p), p) near the
  // guess. This is the only path that works on the core circle of a tube
  // chart: there the polar angle is pure gauge, so the chart displacement
  // used by the shooting iteration never vanishes even though the orbit
  // closes up exactly.
  {
    OdeOptions tight = opt.ode;
    tight.tol = std::min(tight.tol, 1e-12);
    auto dist_at = [&](double t) {
      OdeResult r = integrate_rk45(make_rhs(s), 0.0, p0, t, tight, make_projector(s));
      return s.distance(s.wrap(r.y), s.wrap(p0));
    };
    try {
      const int nscan = 48;
      const double lo = 0.8 * period_guess, hi = 1.25 * period_guess;
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= nscan; ++i) {
        double d = dist_at(lo + (hi - lo) * i / nscan);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best > 0 && best < nscan) {
        double a = lo + (hi - lo) * (best - 1) / nscan;
        double b = lo + (hi - lo) * (best + 1) / nscan;
        while (b - a > 1e-13 * period_guess) {
          double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
          if (dist_at(m1) < dist_at(m2))
            b = m2;
          else
            a = m1;
        }
        double t_star = 0.5 * (a + b);
        OdeResult close = integrate_rk45(make_rhs(s), 0.0, p0, t_star, tight,
                                         make_projector(s));
        double d_star = s.distance(s.wrap(close.y), s.wrap(p0));
        if (d_star <= opt.tol)
          return finalize_orbit(s, p0, t_star, close.y, 0, opt, n_samples);
      }
    } catch (const std::domain_error&) {
      // trajectory left the atlas inside the scan window; fall through to
      // the shooting iteration, which brackets crossings defensively
    }
  }

  // Expected deck translation over one period, taken from the seed trajectory.
  OdeResult guess_run = integrate_rk45(make_rhs(s), 0.0, p0, period_guess, opt.ode,
                                       make_projector(s));
  StateVec drift = deck_round(s, guess_run.y - p0);

  auto eval_return = [&](const StateVec& p) -> Crossing {
    return find_plane_crossing(s, p, p, n, drift, 0.5 * period_guess, 1.6 * period_guess,
                               opt.ode);
  };

  auto gfun = [&](const StateVec& p, Crossing& cr) -> Eigen::VectorXd {
    cr = eval_return(p);
    if (!cr.found) throw RefinementError("refine_periodic_orbit: no return to the section");
    StateVec disp = cr.point - p;
    disp -= deck_round(s, disp);
    return basis.transpose() * disp;
  };

  StateVec p = p0;
  Crossing cr;
  Eigen::VectorXd g = gfun(p, cr);
  double gnorm = g.norm();
  int iter = 0;
  for (; iter < opt.max_iterations && gnorm > opt.tol; ++iter) {
    // finite-difference Jacobian in the transverse directions
    Eigen::MatrixXd jac(k, k);
    for (int c = 0; c < k; ++c) {
      StateVec pc = p + opt.fd_step * StateVec(basis.col(c));
      if (s.has_constraint()) s.project(pc);
      Crossing tmp;
      Eigen::VectorXd gc = gfun(pc, tmp);
      jac.col(c) = (gc - g) / opt.fd_step;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
    cod.setThreshold(1e-10);
    Eigen::VectorXd du = -cod.solve(g);
    if (!du.allFinite() || du.norm() == 0.0)
      throw RefinementError("refine_periodic_orbit: singular transverse system at residual " +
                            std::to_string(gnorm));

    double lambda = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 10; ++bt) {
      StateVec trial = p + lambda * StateVec(basis * du);
      if (s.has_constraint()) s.project(trial);
      if (!s.in_domain(trial)) {
        lambda *= opt.damping;
        continue;
      }
      Crossing trial_cr;
      Eigen::VectorXd gt;
      try {
        gt = gfun(trial, trial_cr);
      } catch (const RefinementError&) {
        lambda *= opt.damping;
        continue;
      }
      if (gt.norm() < gnorm * (1.0 - 1e-4) || gt.norm() < opt.tol) {
        p = trial;
        g = gt;
        cr = trial_cr;
        gnorm = g.norm();
        improved = true;
        break;
      }
      lambda *= opt.damping;
    }
    if (!improved)
      throw RefinementError("refine_periodic_orbit: stalled at residual " +
                            std::to_string(gnorm));
  }
  if (gnorm > opt.tol)
    throw RefinementError("refine_periodic_orbit: residual " + std::to_string(gnorm) +
                          " after " + std::to_string(iter) + " iterations");

  return finalize_orbit(s, p, cr.time, cr.point, iter, opt, n_samples);
}

std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::hyperbolic: return "hyperbolic";
    case OrbitClass::elliptic: return "elliptic";
    default: return "parabolic";
  }
}

namespace {

// Periodic cubic interpolation of the sampled A2(t) entries.
struct A2Interp {
  const std::vector<Mat2>* samples;
  double period;

  Mat2 operator()(double t) const {
    const auto& a = *samples;
    const int n = static_cast<int>(a.size());
    double u = wrap_into(t, period) / period * n;
    int i = static_cast<int>(std::floor(u));
    double x = u - i;
    if (i >= n) i -= n;
    auto wrap = [&](int j) { return ((j % n) + n) % n; };
    Mat2 out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        double p0 = a[wrap(i - 1)](r, c), p1 = a[wrap(i)](r, c), p2 = a[wrap(i + 1)](r, c),
               p3 = a[wrap(i + 2)](r, c);
        out(r, c) = p1 + 0.5 * x * (p2 - p0 + x * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                                   x * (3 * (p1 - p2) + p3 - p0)));
      }
    return out;
  }
};

Mat2 integrate_monodromy(const A2Interp& a2, double period, long steps) {
  Mat2 m = Mat2::Identity();
  const double h = period / steps;
  for (long i = 0; i < steps; ++i) {
    double t = i * h;
    Mat2 k1 = a2(t) * m;
    Mat2 k2 = a2(t + 0.5 * h) * (m + 0.5 * h * k1);
    Mat2 k3 = a2(t + 0.5 * h) * (m + 0.5 * h * k2);
    Mat2 k4 = a2(t + h) * (m + h * k3);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return m;
}

}  // namespace

TransverseBlock transverse_block(const Scenario& s, const PeriodicOrbit& orbit,
                                 const geometry::TubularFrame& frame, int n_samples) {
  (void)s;
  if (n_samples < 16) throw std::invalid_argument("transverse_block: need >= 16 samples");
  TransverseBlock block;
  block.component = orbit.component;
  block.period = orbit.period > 0.0 ? orbit.period : frame.period();
  block.a2.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    double t = block.period * k / n_samples;
    block.a2[k] = frame.transverse_jacobian(t, 0.0, 0.0);
  }

  A2Interp interp{&block.a2, block.period};
  block.monodromy = integrate_monodromy(interp, block.period, 4096);
  Mat2 coarse = integrate_monodromy(interp, block.period, 1024);
  block.recheck_error = (block.monodromy - coarse).cwiseAbs().maxCoeff();
  if (block.recheck_error > 1e-6)
    throw RefinementError("transverse_block: monodromy re-integration disagrees by " +
                          std::to_string(block.recheck_error));

  // Liouville: det M(T) = exp(int_0^T tr A2); integrate the trace with the
  // same interpolation (composite Simpson on a fine grid).
  const int ns = 4096;
  double tr_int = 0.0;
  const double h = block.period / ns;
  for (int i = 0; i < ns; ++i) {
    double t0 = i * h;
    tr_int += (h / 6.0) * (interp(t0).trace() + 4.0 * interp(t0 + 0.5 * h).trace() +
                           interp(t0 + h).trace());
  }
  block.liouville_defect = std::abs(block.monodromy.determinant() - std::exp(tr_int));

  const double tr = block.monodromy.trace();
  const double det = block.monodromy.determinant();
  Cplx disc = std::sqrt(Cplx(tr * tr - 4.0 * det, 0.0));
  block.multipliers[0] = (Cplx(tr, 0.0) + disc) / 2.0;
  block.multipliers[1] = (Cplx(tr, 0.0) - disc) / 2.0;
  return block;
}

OrbitClass classify_orbit(const std::array<Cplx, 2>& multipliers, double tol) {
  const Cplx l1 = multipliers[0], l2 = multipliers[1];
  auto is_real = [&](const Cplx& l) { return std::abs(l.imag()) <= tol * std::max(1.0, std::abs(l)); };
  auto on_circle = [&](const Cplx& l) { return std::abs(std::abs(l) - 1.0) <= tol; };

  if (is_real(l1) && is_real(l2) && !on_circle(l1) && !on_circle(l2))
    return OrbitClass::hyperbolic;
  if (on_circle(l1) && on_circle(l2) && std::abs(l1 - Cplx(1, 0)) > tol &&
      std::abs(l1 - Cplx(-1, 0)) > tol && std::abs(l2 - Cplx(1, 0)) > tol &&
      std::abs(l2 - Cplx(-1, 0)) > tol)
    return OrbitClass::elliptic;
  return OrbitClass::parabolic;
}

}  // namespace sos::orbit
