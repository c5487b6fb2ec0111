#pragma once

#include <string>
#include <vector>

#include "sos/cohomology/one_form.hpp"
#include "sos/lp/simplex.hpp"
#include "sos/measures/occupation.hpp"
#include "sos/measures/test_functions.hpp"

namespace sos::measures {

// Discretized positivity problem.  Primal (measure side): weights mu_c >= 0
// per cell, sum mu = 1, |sum_c mu_c dg_k(W)_c| <= delta_slack per test
// function, minimizing sum_c mu_c beta(W)_c.  The dual reads as a potential
// g = sum_k coeff_k g_k with beta(W) + dg(W) >= eps at the nodes.
struct AssembledLp {
  lp::Problem problem;
  Eigen::VectorXd beta;  // nodal beta(W), the objective row
  Eigen::MatrixXd v;     // n_funcs x n_cells nodal dg_k(W)
  double delta_slack = 0.0;
  const OccupationGrid* grid = nullptr;          // not owned
  const cohomology::GridOneForm* form = nullptr; // not owned
  std::vector<TestFunction> funcs;
};

AssembledLp assemble_lp(const OccupationGrid& grid, const cohomology::GridOneForm& form,
                        double delta_slack = 1e-8);

// Outcome of the LP plus solver-independent re-verification.  eps_star is
// the verified dual margin when certified and the primal optimum when
// refuted; both bounds appear in the fields either way.
struct Certificate {
  enum class Verdict { certified, refuted, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  double eps_star = 0.0;
  double lp_objective = 0.0;   // solver primal optimum
  double dual_margin = 0.0;    // min over nodes of beta(W) + dg*(W)
  double duality_gap = 0.0;    // relative, from the solver
  double disc_err = 0.0;       // half the worst adjacent-node jump of eta(W)
  double refined_min = 0.0;    // min eta(W) over the refined node set
  double delta_inv = 0.0;      // invariance residual of the returned weights
  double pairing_value = 0.0;  // beta . mu of the returned weights
  std::vector<double> potential_coeffs;  // dual potential in the g_k basis
  std::vector<double> mu;                // primal weights
  std::string notes;
};

// Solve and re-verify.  The solver is untrusted: the certified margin is
// recomputed from the raw rows, checked to dominate twice the discretization
// error and re-evaluated on a refined node set; refuting weights are checked
// for invariance residual and pairing value directly.
Certificate certify_positivity(const AssembledLp& lp,
                               const lp::SolveOptions& opt = {});

// Pairing of beta(W) with the reference-volume occupation measure.
double uniform_pairing(const OccupationGrid& grid, const cohomology::GridOneForm& form);

}  // namespace sos::measures
