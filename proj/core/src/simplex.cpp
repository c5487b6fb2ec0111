#include "sos/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sos::lp {

namespace {

// Internal standard form: min c'v, A v = b, v >= 0, b >= 0, where
// v = [x (n), slacks (n_le), artificials (m)].
struct Tableau {
  Eigen::MatrixXd a;   // m x n_total
  Eigen::VectorXd b;   // m, nonnegative
  Eigen::VectorXd c;   // phase-2 costs (artificials get 0)
  int n_x = 0;         // structural variables
  int n_slack = 0;
  int m = 0;
  int art_begin = 0;   // first artificial column
  std::vector<char> flipped;  // rows negated during normalization
};

Tableau build_tableau(const Problem& p) {
  const int n = p.n_vars(), me = p.n_eq(), ml = p.n_le(), m = me + ml;
  Tableau t;
  t.n_x = n;
  t.n_slack = ml;
  t.m = m;
  t.art_begin = n + ml;
  const int ntot = n + ml + m;
  t.a.setZero(m, ntot);
  t.b.setZero(m);
  t.c.setZero(ntot);
  t.c.head(n) = p.c;

  if (me > 0) {
    t.a.block(0, 0, me, n) = p.a_eq;
    t.b.head(me) = p.b_eq;
  }
  if (ml > 0) {
    t.a.block(me, 0, ml, n) = p.a_le;
    t.b.tail(ml) = p.b_le;
    t.a.block(me, n, ml, ml).setIdentity();
  }
  // normalize to b >= 0 (flips slack signs too, which is why slacks cannot
  // serve as the universal starting basis); the reported dual of a flipped
  // row must be negated back to the original orientation
  t.flipped.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    if (t.b[i] < 0.0) {
      t.a.row(i) = -t.a.row(i);
      t.b[i] = -t.b[i];
      t.flipped[i] = 1;
    }
  }
  // one artificial per row; the all-artificial identity basis starts phase 1
  for (int i = 0; i < m; ++i) t.a(i, t.art_begin + i) = 1.0;
  return t;
}

struct SimplexState {
  std::vector<int> basis;       // column index per row
  std::vector<char> is_basic;   // per column
  Eigen::VectorXd xb;           // basic values
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  void refactor(const Tableau& t) {
    Eigen::MatrixXd bmat(t.m, t.m);
    for (int i = 0; i < t.m; ++i) bmat.col(i) = t.a.col(basis[i]);
    lu.compute(bmat);
    xb = lu.solve(t.b);
  }
};

// Runs the simplex on the given cost vector from the current basis.
// Returns true when optimal, false when unbounded.
bool run_phase(const Tableau& t, const Eigen::VectorXd& cost, SimplexState& st,
               const SolveOptions& opt, int& iters, bool forbid_artificials) {
  const int ntot = static_cast<int>(t.a.cols());
  const int stall_limit = opt.stall_limit > 0 ? opt.stall_limit : 3 * t.m;
  int stalled = 0;

  for (;;) {
    if (++iters > opt.max_iterations)
      throw SolveError("simplex: iteration limit exceeded (" +
                       std::to_string(opt.max_iterations) + ")");

    st.refactor(t);
    Eigen::VectorXd cb(t.m);
    for (int i = 0; i < t.m; ++i) cb[i] = cost[st.basis[i]];
    Eigen::VectorXd y = st.lu.transpose().solve(cb);

    const bool bland = stalled > stall_limit;
    int enter = -1;
    double best = -opt.tol;
    for (int j = 0; j < ntot; ++j) {
      if (st.is_basic[j]) continue;
      if (forbid_artificials && j >= t.art_begin) continue;
      double d = cost[j] - y.dot(t.a.col(j));
      if (bland) {
        if (d < -opt.tol) { enter = j; break; }
      } else if (d < best) {
        best = d;
        enter = j;
      }
    }
    if (enter < 0) return true;  // optimal for this phase

    Eigen::VectorXd u = st.lu.solve(t.a.col(enter));
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (int i = 0; i < t.m; ++i) {
      if (u[i] > opt.tol) {
        double ratio = st.xb[i] / u[i];
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (std::abs(u[i]) > best_pivot ||
              (std::abs(u[i]) == best_pivot && leave >= 0 && st.basis[i] < st.basis[leave])))) {
          best_ratio = ratio;
          best_pivot = std::abs(u[i]);
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded direction

    stalled = (best_ratio < opt.tol) ? stalled + 1 : 0;
    st.is_basic[st.basis[leave]] = 0;
    st.is_basic[enter] = 1;
    st.basis[leave] = enter;
  }
}

// After phase 1, pivot zero-level artificials out of the basis when possible;
// rows whose remaining coefficients are all zero are redundant and keep their
// artificial pinned at level zero.
void drive_out_artificials(const Tableau& t, SimplexState& st, const SolveOptions& opt) {
  for (int i = 0; i < t.m; ++i) {
    if (st.basis[i] < t.art_begin) continue;
    st.refactor(t);
    for (int j = 0; j < t.art_begin; ++j) {
      if (st.is_basic[j]) continue;
      Eigen::VectorXd u = st.lu.solve(t.a.col(j));
      if (std::abs(u[i]) > 1e2 * opt.tol) {
        st.is_basic[st.basis[i]] = 0;
        st.is_basic[j] = 1;
        st.basis[i] = j;
        break;
      }
    }
  }
}

}  // namespace

Solution solve(const Problem& p, const SolveOptions& opt) {
  if (p.a_eq.size() > 0 && p.a_eq.cols() != p.c.size())
    throw SolveError("simplex: a_eq column count does not match c");
  if (p.a_le.size() > 0 && p.a_le.cols() != p.c.size())
    throw SolveError("simplex: a_le column count does not match c");

  Tableau t = build_tableau(p);
  SimplexState st;
  st.basis.resize(t.m);
  st.is_basic.assign(t.a.cols(), 0);
  for (int i = 0; i < t.m; ++i) {
    st.basis[i] = t.art_begin + i;
    st.is_basic[t.art_begin + i] = 1;
  }

  Solution sol;
  int iters = 0;

  // Phase 1: minimize the artificial mass.
  Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(t.a.cols());
  phase1_cost.tail(t.m).setOnes();
  if (!run_phase(t, phase1_cost, st, opt, iters, false))
    throw SolveError("simplex: phase 1 reported an unbounded direction");
  st.refactor(t);
  double art_mass = 0.0;
  for (int i = 0; i < t.m; ++i)
    if (st.basis[i] >= t.art_begin) art_mass += std::abs(st.xb[i]);
  if (art_mass > 1e4 * opt.tol) {
    sol.status = Status::infeasible;
    sol.iterations = iters;
    return sol;
  }
  drive_out_artificials(t, st, opt);

  // Phase 2 on the real cost, artificials barred from entering.
  bool optimal = run_phase(t, t.c, st, opt, iters, true);
  st.refactor(t);
  sol.iterations = iters;
  if (!optimal) {
    sol.status = Status::unbounded;
    return sol;
  }

  // Assemble the primal point and the dual vector from the final basis.
  sol.x.setZero(t.n_x);
  for (int i = 0; i < t.m; ++i)
    if (st.basis[i] < t.n_x) sol.x[st.basis[i]] = st.xb[i];
  sol.objective = p.c.dot(sol.x);

  Eigen::VectorXd cb(t.m);
  for (int i = 0; i < t.m; ++i) cb[i] = t.c[st.basis[i]];
  Eigen::VectorXd y = st.lu.transpose().solve(cb);
  for (int i = 0; i < t.m; ++i)
    if (t.flipped[i]) y[i] = -y[i];
  sol.y_eq = y.head(p.n_eq());
  sol.y_le = y.tail(p.n_le());

  // Self-diagnostics: primal feasibility, dual feasibility, duality gap.
  double pres = 0.0;
  if (p.n_eq() > 0) pres = (p.a_eq * sol.x - p.b_eq).cwiseAbs().maxCoeff();
  if (p.n_le() > 0)
    pres = std::max(pres, (p.a_le * sol.x - p.b_le).maxCoeff());
  pres = std::max(pres, std::max(0.0, -sol.x.minCoeff()));
  sol.primal_residual = std::max(pres, 0.0);

  Eigen::VectorXd atY = Eigen::VectorXd::Zero(t.n_x);
  if (p.n_eq() > 0) atY += p.a_eq.transpose() * sol.y_eq;
  if (p.n_le() > 0) atY += p.a_le.transpose() * sol.y_le;
  sol.dual_residual = std::max(0.0, (atY - p.c).maxCoeff());
  if (p.n_le() > 0) sol.dual_residual = std::max(sol.dual_residual, sol.y_le.maxCoeff());

  double dual_obj = 0.0;
  if (p.n_eq() > 0) dual_obj += p.b_eq.dot(sol.y_eq);
  if (p.n_le() > 0) dual_obj += p.b_le.dot(sol.y_le);
  sol.duality_gap = std::abs(sol.objective - dual_obj) / std::max(1.0, std::abs(sol.objective));
  return sol;
}

}  // namespace sos::lp
