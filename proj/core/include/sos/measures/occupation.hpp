#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "sos/boundary/blowup.hpp"
#include "sos/common/types.hpp"
#include "sos/geometry/scenario.hpp"
#include "sos/geometry/tubular.hpp"

namespace sos::measures {

// One cell of the occupation discretization: a chart box with a node at its
// center and the (blown-up) velocity sampled there.  Boundary strata carry
// degenerate boxes and zero reference weight; they exist so that invariant
// measures living on the blow-up tori are representable in the primal LP.
struct GridCell {
  enum class Kind { interior, collar, wall, pole };
  Kind kind = Kind::interior;
  StateVec node;    // chart coordinates of the sample node
  Vec3 velocity;    // chart velocity at the node (W on blow-up strata)
  Vec3 lo;          // chart box, lo[i] == hi[i] on degenerate axes
  Vec3 hi;
  double weight = 0.0;  // reference volume fraction, 0 on boundary strata
};

// Box partition of the blown-up domain in its canonical chart, together with
// nodal velocities, an adjacency list for discretization-error probes, and a
// velocity evaluator for off-node re-verification.  The scenario (and for
// tube charts its frame) is captured by the factory and must stay alive.
class OccupationGrid {
 public:
  enum class Chart { flat3, tube, fibration };

  static OccupationGrid flat3(const geometry::T3Linear& s, int n);
  // Solid-torus chart (t, r, theta); collar cells at r = 0 are always
  // present, wall cells at r = 1 only when the field is tangent there.
  static OccupationGrid tube(const geometry::Scenario& s, int nt, int nr, int ntheta);
  // Global (s, nu, alpha) chart of the fibration complement; collar cells at
  // nu = 0, pole ring at nu = 1 where the chart angle degenerates.
  static OccupationGrid fibration(const geometry::HopfS3& s, int ns, int nnu,
                                  int nalpha);

  Chart chart() const { return chart_; }
  int size() const { return static_cast<int>(cells_.size()); }
  const GridCell& cell(int c) const { return cells_.at(c); }
  const std::vector<GridCell>& cells() const { return cells_; }
  const std::vector<std::pair<int, int>>& neighbor_pairs() const { return pairs_; }
  double period() const { return period_; }

  // Chart velocity at an arbitrary chart point of the closed domain.
  Vec3 velocity_at(const StateVec& chart_point) const;

  // Nodes of a per-axis subdivision of every cell box (degenerate axes are
  // not subdivided); used by the certificate re-verification pass.
  std::vector<StateVec> refined_nodes(int per_axis = 3) const;

 private:
  OccupationGrid() = default;
  Chart chart_ = Chart::flat3;
  double period_ = 1.0;  // span of the first chart axis
  std::vector<GridCell> cells_;
  std::vector<std::pair<int, int>> pairs_;
  std::function<Vec3(const StateVec&)> velocity_;
  std::unique_ptr<geometry::TubularFrame> frame_;
  std::unique_ptr<boundary::BlowupField> blowup_;
};

}  // namespace sos::measures
