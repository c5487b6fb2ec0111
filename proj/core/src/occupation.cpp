#include "sos/measures/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sos::measures {

using geometry::Scenario;

namespace {

GridCell make_cell(GridCell::Kind kind, const Vec3& node, const Vec3& lo,
                   const Vec3& hi, double weight) {
  GridCell c;
  c.kind = kind;
  c.node = StateVec(3);
  c.node << node[0], node[1], node[2];
  c.lo = lo;
  c.hi = hi;
  c.weight = weight;
  return c;
}

}  // namespace

OccupationGrid OccupationGrid::flat3(const geometry::T3Linear& s, int n) {
  if (n < 1) throw std::invalid_argument("OccupationGrid: need at least 1 cell per axis");
  OccupationGrid g;
  g.chart_ = Chart::flat3;
  g.period_ = 1.0;
  const double h = 1.0 / n;
  const double w = 1.0 / (static_cast<double>(n) * n * n);
  auto idx = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec3 lo(i * h, j * h, k * h);
        Vec3 hi((i + 1) * h, (j + 1) * h, (k + 1) * h);
        Vec3 node = 0.5 * (lo + hi);
        g.cells_.push_back(make_cell(GridCell::Kind::interior, node, lo, hi, w));
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        g.pairs_.emplace_back(idx(i, j, k), idx((i + 1) % n, j, k));
        g.pairs_.emplace_back(idx(i, j, k), idx(i, (j + 1) % n, k));
        g.pairs_.emplace_back(idx(i, j, k), idx(i, j, (k + 1) % n));
      }
  g.velocity_ = [&s](const StateVec& x) {
    StateVec f = s.field(x);
    return Vec3(f[0], f[1], f[2]);
  };
  for (auto& c : g.cells_) c.velocity = g.velocity_(c.node);
  return g;
}

OccupationGrid OccupationGrid::tube(const Scenario& s, int nt, int nr, int ntheta) {
  if (nt < 2 || nr < 2 || ntheta < 2)
    throw std::invalid_argument("OccupationGrid: need at least 2 cells per axis");
  OccupationGrid g;
  g.chart_ = Chart::tube;
  const double period = s.characteristic_period();
  g.period_ = period;
  g.frame_ = s.tubular_frame(0);
  g.blowup_ = std::make_unique<boundary::BlowupField>(*g.frame_);
  const boundary::BlowupField* bf = g.blowup_.get();
  g.velocity_ = [bf](const StateVec& x) { return bf->field(x[0], x[1], x[2]); };

  const double ht = period / nt;
  const double hr = 1.0 / nr;
  const double hth = kTwoPi / ntheta;
  auto idx = [nr, ntheta](int i, int j, int k) { return (i * nr + j) * ntheta + k; };

  double total = 0.0;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nr; ++j)
      for (int k = 0; k < ntheta; ++k) {
        Vec3 lo(i * ht, j * hr, k * hth);
        Vec3 hi((i + 1) * ht, (j + 1) * hr, (k + 1) * hth);
        Vec3 node = 0.5 * (lo + hi);
        // chart volume element r dr dtheta dt
        double w = 0.5 * (hi[1] * hi[1] - lo[1] * lo[1]) * ht * hth;
        total += w;
        g.cells_.push_back(make_cell(GridCell::Kind::interior, node, lo, hi, w));
      }
  for (auto& c : g.cells_) c.weight /= total;

  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nr; ++j)
      for (int k = 0; k < ntheta; ++k) {
        g.pairs_.emplace_back(idx(i, j, k), idx((i + 1) % nt, j, k));
        g.pairs_.emplace_back(idx(i, j, k), idx(i, j, (k + 1) % ntheta));
        if (j + 1 < nr) g.pairs_.emplace_back(idx(i, j, k), idx(i, j + 1, k));
      }

  // collar stratum at r = 0, nodes on the grid lines so circle measures on
  // the blow-up torus are representable exactly
  const int collar0 = static_cast<int>(g.cells_.size());
  for (int i = 0; i < nt; ++i)
    for (int k = 0; k < ntheta; ++k) {
      Vec3 node(i * ht, 0.0, k * hth);
      Vec3 lo(node[0] - 0.5 * ht, 0.0, node[2] - 0.5 * hth);
      Vec3 hi(node[0] + 0.5 * ht, 0.0, node[2] + 0.5 * hth);
      g.cells_.push_back(make_cell(GridCell::Kind::collar, node, lo, hi, 0.0));
    }
  auto collar_idx = [collar0, ntheta](int i, int k) { return collar0 + i * ntheta + k; };
  for (int i = 0; i < nt; ++i)
    for (int k = 0; k < ntheta; ++k) {
      g.pairs_.emplace_back(collar_idx(i, k), collar_idx((i + 1) % nt, k));
      g.pairs_.emplace_back(collar_idx(i, k), collar_idx(i, (k + 1) % ntheta));
      g.pairs_.emplace_back(collar_idx(i, k), idx(i, 0, k));
    }

  // wall stratum at r = 1, only when the flow is tangent to the wall
  double wall_normal = 0.0;
  for (int i = 0; i < nt; ++i)
    for (int k = 0; k < ntheta; ++k) {
      StateVec x(3);
      x << i * ht, 1.0, k * hth;
      wall_normal = std::max(wall_normal, std::abs(g.velocity_(x)[1]));
    }
  if (wall_normal <= 1e-12) {
    const int wall0 = static_cast<int>(g.cells_.size());
    for (int i = 0; i < nt; ++i)
      for (int k = 0; k < ntheta; ++k) {
        Vec3 node(i * ht, 1.0, k * hth);
        Vec3 lo(node[0] - 0.5 * ht, 1.0, node[2] - 0.5 * hth);
        Vec3 hi(node[0] + 0.5 * ht, 1.0, node[2] + 0.5 * hth);
        g.cells_.push_back(make_cell(GridCell::Kind::wall, node, lo, hi, 0.0));
      }
    auto wall_idx = [wall0, ntheta](int i, int k) { return wall0 + i * ntheta + k; };
    for (int i = 0; i < nt; ++i)
      for (int k = 0; k < ntheta; ++k) {
        g.pairs_.emplace_back(wall_idx(i, k), wall_idx((i + 1) % nt, k));
        g.pairs_.emplace_back(wall_idx(i, k), wall_idx(i, (k + 1) % ntheta));
        g.pairs_.emplace_back(wall_idx(i, k), idx(i, nr - 1, k));
      }
  }

  for (auto& c : g.cells_) c.velocity = g.velocity_(c.node);
  return g;
}

OccupationGrid OccupationGrid::fibration(const geometry::HopfS3& s, int ns, int nnu,
                                         int nalpha) {
  if (ns < 2 || nnu < 2 || nalpha < 2)
    throw std::invalid_argument("OccupationGrid: need at least 2 cells per axis");
  (void)s;  // the chart velocity is (1, 0, 0) for the whole fibration flow
  OccupationGrid g;
  g.chart_ = Chart::fibration;
  g.period_ = kTwoPi;
  g.velocity_ = [](const StateVec&) { return Vec3(1.0, 0.0, 0.0); };

  const double hs = kTwoPi / ns;
  const double hn = 1.0 / nnu;
  const double ha = kTwoPi / nalpha;
  auto idx = [nnu, nalpha](int i, int j, int k) { return (i * nnu + j) * nalpha + k; };

  double total = 0.0;
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nnu; ++j)
      for (int k = 0; k < nalpha; ++k) {
        Vec3 lo(i * hs, j * hn, k * ha);
        Vec3 hi((i + 1) * hs, (j + 1) * hn, (k + 1) * ha);
        Vec3 node = 0.5 * (lo + hi);
        // round-sphere volume element nu dnu ds dalpha
        double w = 0.5 * (hi[1] * hi[1] - lo[1] * lo[1]) * hs * ha;
        total += w;
        g.cells_.push_back(make_cell(GridCell::Kind::interior, node, lo, hi, w));
      }
  for (auto& c : g.cells_) c.weight /= total;

  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nnu; ++j)
      for (int k = 0; k < nalpha; ++k) {
        g.pairs_.emplace_back(idx(i, j, k), idx((i + 1) % ns, j, k));
        g.pairs_.emplace_back(idx(i, j, k), idx(i, j, (k + 1) % nalpha));
        if (j + 1 < nnu) g.pairs_.emplace_back(idx(i, j, k), idx(i, j + 1, k));
      }

  const int collar0 = static_cast<int>(g.cells_.size());
  for (int i = 0; i < ns; ++i)
    for (int k = 0; k < nalpha; ++k) {
      Vec3 node(i * hs, 0.0, k * ha);
      Vec3 lo(node[0] - 0.5 * hs, 0.0, node[2] - 0.5 * ha);
      Vec3 hi(node[0] + 0.5 * hs, 0.0, node[2] + 0.5 * ha);
      g.cells_.push_back(make_cell(GridCell::Kind::collar, node, lo, hi, 0.0));
    }
  auto collar_idx = [collar0, nalpha](int i, int k) { return collar0 + i * nalpha + k; };
  for (int i = 0; i < ns; ++i)
    for (int k = 0; k < nalpha; ++k) {
      g.pairs_.emplace_back(collar_idx(i, k), collar_idx((i + 1) % ns, k));
      g.pairs_.emplace_back(collar_idx(i, k), collar_idx(i, (k + 1) % nalpha));
      g.pairs_.emplace_back(collar_idx(i, k), idx(i, 0, k));
    }

  // the antipodal fiber: chart angle alpha degenerates, keep the gauge
  // slice alpha = 0 as a welded ring of cells
  const int pole0 = static_cast<int>(g.cells_.size());
  for (int i = 0; i < ns; ++i) {
    Vec3 node(i * hs, 1.0, 0.0);
    Vec3 lo(node[0] - 0.5 * hs, 1.0, 0.0);
    Vec3 hi(node[0] + 0.5 * hs, 1.0, 0.0);
    g.cells_.push_back(make_cell(GridCell::Kind::pole, node, lo, hi, 0.0));
  }
  for (int i = 0; i < ns; ++i) {
    g.pairs_.emplace_back(pole0 + i, pole0 + (i + 1) % ns);
    g.pairs_.emplace_back(pole0 + i, idx(i, nnu - 1, 0));
  }

  for (auto& c : g.cells_) c.velocity = g.velocity_(c.node);
  return g;
}

Vec3 OccupationGrid::velocity_at(const StateVec& chart_point) const {
  return velocity_(chart_point);
}

std::vector<StateVec> OccupationGrid::refined_nodes(int per_axis) const {
  std::vector<StateVec> out;
  for (const auto& c : cells_) {
    int n0 = c.hi[0] > c.lo[0] ? per_axis : 1;
    int n1 = c.hi[1] > c.lo[1] ? per_axis : 1;
    int n2 = c.hi[2] > c.lo[2] ? per_axis : 1;
    for (int a = 0; a < n0; ++a)
      for (int b = 0; b < n1; ++b)
        for (int d = 0; d < n2; ++d) {
          StateVec x(3);
          x << c.lo[0] + (a + 0.5) / n0 * (c.hi[0] - c.lo[0]),
              c.lo[1] + (b + 0.5) / n1 * (c.hi[1] - c.lo[1]),
              c.lo[2] + (d + 0.5) / n2 * (c.hi[2] - c.lo[2]);
          if (chart_ != Chart::flat3) x[1] = std::clamp(x[1], 0.0, 1.0);
          out.push_back(x);
        }
  }
  return out;
}

}  // namespace sos::measures
