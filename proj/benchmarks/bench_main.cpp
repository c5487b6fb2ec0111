// Microbenchmarks for the hot paths: field interpolation, long-horizon
// integration, orbit refinement, rotation estimation, LP certification and
// leaf extraction.  Run with --benchmark_filter=<regex> to narrow.

#include <benchmark/benchmark.h>

#include <cmath>

#include "sos/boundary/rotation.hpp"
#include "sos/boundary/torus_field.hpp"
#include "sos/cohomology/dual_class.hpp"
#include "sos/common/ode.hpp"
#include "sos/common/types.hpp"
#include "sos/geometry/scenario.hpp"
#include "sos/measures/certify.hpp"
#include "sos/orbit/orbit.hpp"
#include "sos/section/marching.hpp"
#include "sos/section/projection.hpp"

using namespace sos;

namespace {

void FieldEval(benchmark::State& state) {
  const auto field = boundary::BoundaryTorusField::from_function(
      kTwoPi, [](double t, double th) { return 2.0 + std::cos(th) * std::sin(t); }, 64,
      64);
  double t = 0.1, th = 0.2, acc = 0.0;
  for (auto _ : state) {
    acc += field.eval(t, th);
    t += 0.37;
    th += 0.59;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(FieldEval);

void IntegrateGeodesic(benchmark::State& state) {
  const geometry::GeodesicS2 s;
  OdeRhs rhs = [&](double, const StateVec& y, StateVec& dy) { dy = s.field(y); };
  Projector proj = [&](StateVec& y) { s.project(y); };
  StateVec y0(6);
  y0 << 1, 0, 0, 0, std::sqrt(0.5), std::sqrt(0.5);
  OdeOptions opt{.tol = 1e-9, .max_step = 0.05};
  for (auto _ : state) {
    auto r = integrate_rk45(rhs, 0.0, y0, kTwoPi, opt, proj);
    benchmark::DoNotOptimize(r.y);
  }
}
BENCHMARK(IntegrateGeodesic);

void RefineOrbit(benchmark::State& state) {
  const geometry::SolidTorusModel s({1.0}, kTwoPi);
  StateVec seed(3);
  seed << 0.0, 0.05, 0.3;
  for (auto _ : state) {
    auto orbit = orbit::refine_periodic_orbit(s, seed, kTwoPi);
    benchmark::DoNotOptimize(orbit.anchor);
  }
}
BENCHMARK(RefineOrbit);

void RotationEstimate(benchmark::State& state) {
  boundary::RotationOptions opt;
  opt.horizon_mult = state.range(0);
  for (auto _ : state) {
    auto est = boundary::estimate_rotation(
        kTwoPi, [](double, double th) { return 2.0 + std::cos(th); }, opt);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(RotationEstimate)->Arg(256)->Arg(1024)->Arg(4096);

void LpCertify(benchmark::State& state) {
  const geometry::T3Linear t3(Vec3(1.0, 1.618, 1.414));
  const auto form = cohomology::DualClass::interior(Vec3(1, 0, 0)).representative(t3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto grid = measures::OccupationGrid::flat3(t3, n);
    auto cert = measures::certify_positivity(measures::assemble_lp(grid, form, 1e-8));
    benchmark::DoNotOptimize(cert.eps_star);
  }
}
BENCHMARK(LpCertify)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void LeafExtract(benchmark::State& state) {
  const geometry::T3Linear t3(Vec3(1.0, 1.618, 1.414));
  const auto form = cohomology::DualClass::interior(Vec3(1, 0, 0)).representative(t3);
  const section::ProjectionField pr(t3, form, StateVec::Zero(3));
  const double level = pr.pick_regular_level();
  for (auto _ : state) {
    auto leaf = section::extract_leaf(pr, level);
    benchmark::DoNotOptimize(leaf.vertices);
  }
}
BENCHMARK(LeafExtract)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
