#pragma once

#include <cstdint>
#include <vector>

#include "sos/geometry/scenario.hpp"

namespace sos::section {

struct AnnulusOptions {
  int n_samples = 10000;
  double cutoff = 8.0;  // > 2 pi; every great circle recrosses within 2 pi
  std::uint64_t seed = 20260816;
  double tol = 1e-9;
};

struct AnnulusStats {
  int samples = 0;
  int misses = 0;
  double tau_min = 0.0;
  double tau_mean = 0.0;
  double tau_max = 0.0;
  double min_margin = 0.0;  // smallest upward speed v3 at a recorded crossing
  std::vector<double> taus;  // per-hit crossing times, sample order
};

// Surface of section for the geodesic flow of the round 2-sphere: unit
// vectors based on the equator and pointing into the upper hemisphere,
// i.e. upward crossings of {x3 = 0}.  The boundary consists of the two
// lifts of the equator geodesic, where the crossing speed v3 vanishes, so
// margins are reported but only strictly interior crossings bound them away
// from zero.  Samples random unit tangent vectors and records the first
// upward crossing time in (0, cutoff].
AnnulusStats birkhoff_annulus_stats(const geometry::GeodesicS2& s, const AnnulusOptions& opt);

}  // namespace sos::section
