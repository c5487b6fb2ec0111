#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sos/common/types.hpp"

namespace sos::lp {

// min c'x  subject to  a_eq x = b_eq,  a_le x <= b_le,  x >= 0.
struct Problem {
  Eigen::VectorXd c;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd a_le;
  Eigen::VectorXd b_le;
  // Optional names used by the text export; generated when absent.
  std::vector<std::string> var_names;
  std::vector<std::string> eq_names;
  std::vector<std::string> le_names;

  int n_vars() const { return static_cast<int>(c.size()); }
  int n_eq() const { return static_cast<int>(b_eq.size()); }
  int n_le() const { return static_cast<int>(b_le.size()); }
};

enum class Status { optimal, infeasible, unbounded };

// Besides the optimum, the solver reports the dual vector taken from the
// final basis (y' = c_B' B^{-1}): y_eq free, y_le <= 0 for the canonical dual
//   max b_eq'y + b_le'z  s.t.  a_eq'y + a_le'z <= c, z <= 0,
// along with self-diagnostics (primal feasibility residual, dual residual,
// relative duality gap) so callers can re-verify optimality independently.
struct Solution {
  Status status = Status::optimal;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y_eq;
  Eigen::VectorXd y_le;
  double duality_gap = 0.0;          // |primal - dual| / max(1, |primal|)
  double primal_residual = 0.0;      // max constraint violation
  double dual_residual = 0.0;        // max violation of a_eq'y + a_le'z <= c
  int iterations = 0;
};

struct SolveOptions {
  double tol = 1e-11;        // pivot/feasibility tolerance
  int max_iterations = 50000;
  int stall_limit = 0;       // 0: auto (3 * rows); switch to Bland's rule after
};

// Two-phase dense revised simplex. Deterministic: no randomization, ties in
// the ratio test break toward the largest pivot element, then lowest index.
Solution solve(const Problem& p, const SolveOptions& opt = {});

}  // namespace sos::lp
