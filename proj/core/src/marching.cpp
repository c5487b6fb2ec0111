#include "sos/section/marching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace sos::section {

namespace {

using Kind = cohomology::GridOneForm::Kind;

// Kuhn subdivision of the unit cube into six tetrahedra sharing the main
// diagonal; corner bits are b = di + 2 dj + 4 dk.  Translated copies share
// face diagonals, so the global tetrahedral mesh is conforming.
constexpr int kTets[6][4] = {
    {0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7},
};

struct LatticeIndexer {
  const ProjectionField& P;
  int n0, n1, n2;
  bool radial, weld_pole;

  explicit LatticeIndexer(const ProjectionField& p)
      : P(p),
        n0(p.dim(0)),
        n1(p.dim(1)),
        n2(p.dim(2)),
        radial(p.radial()),
        weld_pole(p.kind() == Kind::fibration) {}

  // Wrapped node indices for a raw cell corner; the fibration pole circle
  // collapses the angular coordinate, so all its nodes alias k = 0.
  void wrapped(int i, int j, int k, int& wi, int& wj, int& wk) const {
    wi = i % n0;
    wj = radial ? j : j % n1;
    wk = k % n2;
    if (weld_pole && radial && wj == n1 - 1) wk = 0;
  }

  int gid(int i, int j, int k) const {
    int wi, wj, wk;
    wrapped(i, j, k, wi, wj, wk);
    return (wi * n1 + wj) * n2 + wk;
  }

  double pr(int i, int j, int k) const {
    int wi, wj, wk;
    wrapped(i, j, k, wi, wj, wk);
    return P.node_value(wi, wj, wk);
  }
};

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

Vec3 grad_pr_chart(const ProjectionField& P, const StateVec& chart_pt) {
  Vec3 g = P.form().chart_covector();
  if (P.kind() != Kind::fibration && P.form().has_potential()) {
    const StateVec pg = P.form().potential()->gradient(chart_pt);
    for (int a = 0; a < 3; ++a) g[a] += pg[a];
  }
  return g;
}

}  // namespace

StateVec anchored_delta(const ProjectionField& P, const StateVec& a, const StateVec& b) {
  StateVec d(3);
  for (int ax = 0; ax < 3; ++ax) {
    d[ax] = P.periodic(ax) ? circle_diff(b[ax], a[ax], P.span(ax)) : b[ax] - a[ax];
  }
  return d;
}

SectionLeaf extract_leaf(const ProjectionField& P, double level) {
  if (P.min_node_distance(level) < 1e-9) {
    throw ExtractionError("leaf extraction: level passes through lattice nodes");
  }
  const LatticeIndexer lat(P);
  const int cells0 = P.dim(0);
  const int cells1 = P.radial() ? P.dim(1) - 1 : P.dim(1);
  const int cells2 = P.dim(2);

  SectionLeaf leaf;
  leaf.level = level;
  std::unordered_map<std::uint64_t, int> edge_vertex;
  edge_vertex.reserve(1 << 16);
  std::set<std::array<int, 3>> face_keys;

  // Lifted corner data for the cube currently being processed.
  int gid[8];
  double val[8];
  StateVec pos[8];

  auto vertex_on = [&](int a, int b, double lvl) -> int {
    const std::uint64_t key = pair_key(gid[a], gid[b]);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    const double s = (lvl - val[a]) / (val[b] - val[a]);
    StateVec p = pos[a] + s * (pos[b] - pos[a]);
    for (int ax = 0; ax < 3; ++ax) {
      if (P.periodic(ax)) p[ax] = wrap_into(p[ax], P.span(ax));
    }
    const int id = static_cast<int>(leaf.vertices.size());
    leaf.vertices.push_back(p);
    edge_vertex.emplace(key, id);
    return id;
  };

  auto emit = [&](int u, int v, int w) {
    if (u == v || v == w || u == w) return;  // collapsed by pole welding
    std::array<int, 3> key = {u, v, w};
    std::sort(key.begin(), key.end());
    if (!face_keys.insert(key).second) return;
    leaf.faces.push_back({u, v, w});
  };

  for (int i = 0; i < cells0; ++i) {
    for (int j = 0; j < cells1; ++j) {
      for (int k = 0; k < cells2; ++k) {
        double cmin = 1e300, cmax = -1e300;
        for (int b = 0; b < 8; ++b) {
          const int di = b & 1, dj = (b >> 1) & 1, dk = (b >> 2) & 1;
          gid[b] = lat.gid(i + di, j + dj, k + dk);
          pos[b] = P.node(i + di, j + dj, k + dk);
          const double nv = lat.pr(i + di, j + dj, k + dk);
          val[b] = (b == 0) ? nv : val[0] + circle_diff(nv, val[0], 1.0);
          cmin = std::min(cmin, val[b]);
          cmax = std::max(cmax, val[b]);
        }
        const int m_lo = static_cast<int>(std::ceil(cmin - level));
        const int m_hi = static_cast<int>(std::floor(cmax - level));
        for (int m = m_lo; m <= m_hi; ++m) {
          const double lvl = level + m;
          if (lvl <= cmin || lvl >= cmax) continue;
          for (const auto& tet : kTets) {
            int pos_c[4], neg_c[4];
            int np = 0, nn = 0;
            for (int c = 0; c < 4; ++c) {
              if (val[tet[c]] > lvl) {
                pos_c[np++] = tet[c];
              } else {
                neg_c[nn++] = tet[c];
              }
            }
            if (np == 0 || nn == 0) continue;
            if (np == 1) {
              emit(vertex_on(pos_c[0], neg_c[0], lvl), vertex_on(pos_c[0], neg_c[1], lvl),
                   vertex_on(pos_c[0], neg_c[2], lvl));
            } else if (nn == 1) {
              emit(vertex_on(neg_c[0], pos_c[0], lvl), vertex_on(neg_c[0], pos_c[1], lvl),
                   vertex_on(neg_c[0], pos_c[2], lvl));
            } else {
              const int q0 = vertex_on(pos_c[0], neg_c[0], lvl);
              const int q1 = vertex_on(pos_c[0], neg_c[1], lvl);
              const int q2 = vertex_on(pos_c[1], neg_c[1], lvl);
              const int q3 = vertex_on(pos_c[1], neg_c[0], lvl);
              emit(q0, q1, q2);
              emit(q0, q2, q3);
            }
          }
        }
      }
    }
  }

  if (leaf.faces.empty()) {
    throw ExtractionError("leaf extraction: level set does not intersect the lattice");
  }

  // Drop vertices no surviving face references (welded slivers leave some).
  {
    std::vector<int> remap(leaf.vertices.size(), -1);
    std::vector<StateVec> kept;
    for (auto& f : leaf.faces) {
      for (int& v : f) {
        if (remap[v] < 0) {
          remap[v] = static_cast<int>(kept.size());
          kept.push_back(leaf.vertices[v]);
        }
        v = remap[v];
      }
    }
    leaf.vertices = std::move(kept);
  }

  // Orient every face by the co-orientation (increasing pr), expressed in the
  // chart: the fibration chart is negatively oriented with respect to the
  // ambient sphere, so its chart-coordinate normal picks up a sign.
  const double chart_or = (P.kind() == Kind::fibration) ? -1.0 : 1.0;
  for (auto& f : leaf.faces) {
    const StateVec& u = leaf.vertices[f[0]];
    const StateVec d1 = anchored_delta(P, u, leaf.vertices[f[1]]);
    const StateVec d2 = anchored_delta(P, u, leaf.vertices[f[2]]);
    StateVec centroid = u + (d1 + d2) / 3.0;
    for (int ax = 0; ax < 3; ++ax) {
      if (P.periodic(ax)) centroid[ax] = wrap_into(centroid[ax], P.span(ax));
    }
    const Vec3 n(d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                 d1[0] * d2[1] - d1[1] * d2[0]);
    if (chart_or * n.dot(grad_pr_chart(P, centroid)) < 0.0) std::swap(f[1], f[2]);
  }

  // Edge audit: interior edges pair up exactly; single-face edges must lie on
  // the blow-up tori (r = 0) or the outer wall (r = 1, tube charts only).
  std::unordered_map<std::uint64_t, int> edge_count;
  edge_count.reserve(leaf.faces.size() * 2);
  for (const auto& f : leaf.faces) {
    for (int e = 0; e < 3; ++e) {
      ++edge_count[pair_key(f[e], f[(e + 1) % 3])];
    }
  }
  std::vector<std::pair<int, int>> boundary_edges;
  for (const auto& [key, count] : edge_count) {
    if (count > 2) throw ExtractionError("leaf extraction: non-manifold edge in mesh");
    if (count == 1) {
      boundary_edges.emplace_back(static_cast<int>(key >> 32),
                                  static_cast<int>(key & 0xffffffffu));
    }
  }
  const bool may_have_boundary = P.radial();
  for (const auto& [a, b] : boundary_edges) {
    if (!may_have_boundary) {
      throw ExtractionError("leaf extraction: mesh failed to close on a closed chart");
    }
    for (int v : {a, b}) {
      const double r = leaf.vertices[v][1];
      const bool on_link = std::abs(r) < 1e-9;
      const bool on_wall = P.kind() == Kind::tube && std::abs(r - 1.0) < 1e-9;
      if (!on_link && !on_wall) {
        throw ExtractionError("leaf extraction: mesh is not watertight (resolution too coarse)");
      }
    }
  }

  // Chain boundary edges into closed polylines, following the direction each
  // edge has in its unique face so the cycles carry the induced orientation.
  {
    std::unordered_map<int, int> next_vertex;
    next_vertex.reserve(boundary_edges.size() * 2);
    for (const auto& f : leaf.faces) {
      for (int e = 0; e < 3; ++e) {
        const int a = f[e], b = f[(e + 1) % 3];
        if (edge_count[pair_key(a, b)] == 1) {
          if (!next_vertex.emplace(a, b).second) {
            throw ExtractionError("leaf extraction: boundary is not a union of circles");
          }
        }
      }
    }
    std::set<int> visited;
    for (const auto& [start, ignored] : next_vertex) {
      (void)ignored;
      if (visited.count(start)) continue;
      LeafBoundary cycle;
      int cur = start;
      do {
        cycle.loop.push_back(cur);
        visited.insert(cur);
        const auto it = next_vertex.find(cur);
        if (it == next_vertex.end()) {
          throw ExtractionError("leaf extraction: boundary is not a union of circles");
        }
        cur = it->second;
      } while (cur != start);
      cycle.on_link = std::abs(leaf.vertices[cycle.loop.front()][1]) < 1e-9;

      // Windings of the cycle on its torus, in (longitude, meridian) terms.
      const std::size_t n = cycle.loop.size();
      for (std::size_t e = 0; e < n; ++e) {
        const StateVec& a = leaf.vertices[cycle.loop[e]];
        const StateVec& b = leaf.vertices[cycle.loop[(e + 1) % n]];
        const StateVec d = anchored_delta(P, a, b);
        if (P.kind() == Kind::tube) {
          cycle.n1_raw += d[0] / P.span(0);
          cycle.n2_raw += d[2] / kTwoPi;
        } else {  // fibration: blow-up torus coordinates are (alpha + s, s)
          cycle.n1_raw += (d[2] + d[0]) / kTwoPi;
          cycle.n2_raw += d[0] / kTwoPi;
        }
      }
      cycle.n1 = static_cast<int>(std::lround(cycle.n1_raw));
      cycle.n2 = static_cast<int>(std::lround(cycle.n2_raw));
      if (std::abs(cycle.n1_raw - cycle.n1) > 1e-6 || std::abs(cycle.n2_raw - cycle.n2) > 1e-6) {
        throw ExtractionError("leaf extraction: boundary winding is not an integer");
      }
      if (cycle.on_link) {
        leaf.boundary.push_back(std::move(cycle));
      } else {
        leaf.wall.push_back(std::move(cycle));
      }
    }
  }

  // Surface invariants: connectivity by face adjacency, Euler characteristic,
  // genus from chi = 2 c - 2 g - b.
  {
    std::vector<int> parent(leaf.faces.size());
    for (std::size_t f = 0; f < parent.size(); ++f) parent[f] = static_cast<int>(f);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::unordered_map<std::uint64_t, int> first_face;
    first_face.reserve(leaf.faces.size() * 2);
    for (std::size_t f = 0; f < leaf.faces.size(); ++f) {
      for (int e = 0; e < 3; ++e) {
        const auto key = pair_key(leaf.faces[f][e], leaf.faces[f][(e + 1) % 3]);
        auto [it, inserted] = first_face.emplace(key, static_cast<int>(f));
        if (!inserted) parent[find(static_cast<int>(f))] = find(it->second);
      }
    }
    std::set<int> roots;
    for (std::size_t f = 0; f < leaf.faces.size(); ++f) roots.insert(find(static_cast<int>(f)));
    leaf.components = static_cast<int>(roots.size());
    const int V = static_cast<int>(leaf.vertices.size());
    const int E = static_cast<int>(edge_count.size());
    const int F = static_cast<int>(leaf.faces.size());
    leaf.euler = V - E + F;
    leaf.n_boundary = static_cast<int>(leaf.boundary.size() + leaf.wall.size());
    const int twice_genus = 2 * leaf.components - leaf.euler - leaf.n_boundary;
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      throw ExtractionError("leaf extraction: inconsistent surface invariants");
    }
    leaf.genus = twice_genus / 2;
  }

  return leaf;
}

std::string to_obj(const SectionLeaf& leaf) {
  std::string out;
  out.reserve(40 * (leaf.vertices.size() + leaf.faces.size()));
  char line[128];
  for (const auto& v : leaf.vertices) {
    const double z = v.size() > 2 ? v[2] : 0.0;
    std::snprintf(line, sizeof(line), "v %.17g %.17g %.17g\n", v[0], v[1], z);
    out += line;
  }
  for (const auto& f : leaf.faces) {
    std::snprintf(line, sizeof(line), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += line;
  }
  return out;
}

}  // namespace sos::section
