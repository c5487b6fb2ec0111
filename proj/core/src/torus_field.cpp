#include "sos/boundary/torus_field.hpp"

#include <cmath>

namespace sos::boundary {

namespace {

// periodic Catmull-Rom through the block's A2 samples
Mat2 a2_at(const std::vector<Mat2>& a, double period, double t) {
  const int n = static_cast<int>(a.size());
  double u = wrap_into(t, period) / period * n;
  int i = static_cast<int>(std::floor(u));
  double x = u - i;
  if (i >= n) i -= n;
  auto idx = [&](int j) { return ((j % n) + n) % n; };
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double p0 = a[idx(i - 1)](r, c), p1 = a[idx(i)](r, c), p2 = a[idx(i + 1)](r, c),
             p3 = a[idx(i + 2)](r, c);
      out(r, c) = p1 + 0.5 * x * (p2 - p0 + x * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                                 x * (3 * (p1 - p2) + p3 - p0)));
    }
  return out;
}

}  // namespace

BoundaryTorusField BoundaryTorusField::from_block(const orbit::TransverseBlock& block,
                                                  int nt, int ntheta) {
  if (block.a2.empty()) throw ClassError("BoundaryTorusField: block carries no samples");
  BoundaryTorusField f;
  f.period_ = block.period;
  f.grid_ = PeriodicGrid2d::sample(nt, ntheta, block.period, kTwoPi,
                                   [&](double t, double theta) {
                                     const Vec2 e(std::cos(theta), std::sin(theta));
                                     const Vec2 ie(-e[1], e[0]);
                                     return (a2_at(block.a2, block.period, t) * e).dot(ie);
                                   });
  return f;
}

BoundaryTorusField BoundaryTorusField::from_function(
    double period, const std::function<double(double, double)>& b, int nt, int ntheta) {
  if (!(period > 0.0)) throw ClassError("BoundaryTorusField: period must be positive");
  BoundaryTorusField f;
  f.period_ = period;
  f.grid_ = PeriodicGrid2d::sample(nt, ntheta, period, kTwoPi, b);
  return f;
}

}  // namespace sos::boundary
