#include "doctest.h"

#include <cmath>

#include "sos/common/grid2d.hpp"
#include "sos/common/ode.hpp"
#include "sos/common/parallel.hpp"
#include "sos/common/rng.hpp"
#include "sos/common/types.hpp"

using namespace sos;

TEST_CASE("wrap_into and circle_diff basics") {
  CHECK(wrap_into(2.5, 1.0) == doctest::Approx(0.5));
  CHECK(wrap_into(-0.25, 1.0) == doctest::Approx(0.75));
  CHECK(wrap_into(7.0, kTwoPi) == doctest::Approx(7.0 - kTwoPi));
  CHECK(circle_diff(0.1, 0.9, 1.0) == doctest::Approx(0.2));
  CHECK(circle_diff(0.9, 0.1, 1.0) == doctest::Approx(-0.2));
  // the seam itself
  CHECK(wrap_into(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(std::abs(circle_diff(1.0 - 1e-12, 0.0, 1.0)) < 1e-11);
}

TEST_CASE("rng determinism and fork independence") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng base(7);
  Rng f1 = base.fork(1), f1b = base.fork(1), f2 = base.fork(2);
  CHECK(f1.next_u64() == f1b.next_u64());
  CHECK(f1.next_u64() != f2.next_u64());

  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("parallel_for matches sequential results and propagates errors") {
  std::vector<double> out(257, 0.0);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = std::sin(0.1 * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(std::sin(0.1 * i)));

  CHECK_THROWS_AS(
      parallel_for(64, [](std::size_t i) { if (i == 13) throw std::runtime_error("boom"); }),
      std::runtime_error);
}

TEST_CASE("rk45 integrates the harmonic oscillator over many periods") {
  OdeRhs f = [](double, const StateVec& y, StateVec& dy) {
    dy.resize(2);
    dy << y[1], -y[0];
  };
  StateVec y0(2);
  y0 << 1.0, 0.0;
  OdeOptions opt;
  opt.tol = 1e-10;
  opt.max_step = 0.1;
  auto res = integrate_rk45(f, 0.0, y0, 20.0 * kTwoPi, opt);
  CHECK(std::abs(res.y[0] - 1.0) < 1e-7);
  CHECK(std::abs(res.y[1]) < 1e-7);

  // backward in time returns to the start
  auto back = integrate_rk45(f, res.t, res.y, 0.0, opt);
  CHECK(std::abs(back.y[0] - 1.0) < 1e-6);
  CHECK(std::abs(back.y[1]) < 1e-6);
}

TEST_CASE("rk45 error-per-unit-time mode keeps drift linear on long spans") {
  OdeRhs f = [](double t, const StateVec& y, StateVec& dy) {
    dy.resize(1);
    dy[0] = std::cos(t) * std::exp(std::sin(t)) / (1.0 + 0.0 * y[0]);
  };
  StateVec y0(1);
  y0 << 1.0;  // y = exp(sin t)
  OdeOptions opt;
  opt.tol = 1e-9;
  opt.max_step = 0.5;
  opt.per_unit_time = true;
  auto res = integrate_rk45(f, 0.0, y0, 1000.0, opt);
  CHECK(std::abs(res.y[0] - std::exp(std::sin(1000.0))) < 1e-5);
}

TEST_CASE("rk4 fixed step converges at fourth order") {
  OdeRhs f = [](double, const StateVec& y, StateVec& dy) { dy = y; };
  StateVec y0(1);
  y0 << 1.0;
  auto coarse = integrate_rk4(f, 0.0, y0, 1.0, 50);
  auto fine = integrate_rk4(f, 0.0, y0, 1.0, 100);
  double e_coarse = std::abs(coarse.y[0] - std::exp(1.0));
  double e_fine = std::abs(fine.y[0] - std::exp(1.0));
  CHECK(e_coarse / e_fine > 12.0);  // ~16 for clean fourth order
}

TEST_CASE("periodic bicubic grid reproduces nodes and smooth fields") {
  auto g = PeriodicGrid2d::sample(64, 48, kTwoPi, kTwoPi, [](double x, double y) {
    return std::sin(x) * std::cos(2.0 * y) + 0.3 * std::cos(x + y);
  });
  // exact at nodes
  CHECK(g.eval(g.node_x(5), g.node_y(7)) == doctest::Approx(g.at(5, 7)).epsilon(1e-12));
  // third-order accurate off nodes (cubic convolution), halving the spacing
  // divides the error by ~8
  auto worst_err = [](const PeriodicGrid2d& grid) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      double x = 0.031 * i, y = 0.047 * i;
      double truth = std::sin(x) * std::cos(2.0 * y) + 0.3 * std::cos(x + y);
      worst = std::max(worst, std::abs(grid.eval(x, y) - truth));
    }
    return worst;
  };
  double e64 = worst_err(g);
  CHECK(e64 < 1e-3);
  auto g2 = PeriodicGrid2d::sample(128, 96, kTwoPi, kTwoPi, [](double x, double y) {
    return std::sin(x) * std::cos(2.0 * y) + 0.3 * std::cos(x + y);
  });
  CHECK(e64 / worst_err(g2) > 5.0);
  // periodic seam continuity
  CHECK(g.eval(-1e-9, 1.0) == doctest::Approx(g.eval(kTwoPi - 1e-9, 1.0)).epsilon(1e-9));

  // constant data is reproduced exactly everywhere
  auto c = PeriodicGrid2d::sample(8, 8, 1.0, 1.0, [](double, double) { return 0.3; });
  CHECK(c.eval(0.123, 0.456) == doctest::Approx(0.3).epsilon(1e-15));
}
