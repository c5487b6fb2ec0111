#include "sos/boundary/blowup.hpp"

#include <cmath>

namespace sos::boundary {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1], mapped to [0, 1] by the
// caller. Newton on the Legendre polynomial from the Chebyshev initial guess.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);  // reversed order is irrelevant for a sum
    weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

}  // namespace

BlowupField::BlowupField(const geometry::TubularFrame& frame, int quad_points)
    : frame_(&frame) {
  if (quad_points < 2) throw std::invalid_argument("BlowupField: need >= 2 quad points");
  gauss_legendre(quad_points, nodes_, weights_);
}

Mat2 BlowupField::a_matrix(double t, const Vec2& w) const {
  Mat2 a = Mat2::Zero();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    a += weights_[i] * frame_->transverse_jacobian(t, nodes_[i] * w[0], nodes_[i] * w[1]);
  return a;
}

Vec3 BlowupField::field(double t, double r, double theta) const {
  const Vec2 e(std::cos(theta), std::sin(theta));
  const Vec2 ie(-e[1], e[0]);
  const Vec2 w = r * e;
  const Mat2 a = a_matrix(t, w);
  const Vec2 ae = a * e;
  const Vec3 z = frame_->tube_field(t, w[0], w[1]);
  return Vec3(z[0], r * ae.dot(e), ae.dot(ie));
}

double BlowupField::core_field(double t, double theta) const {
  const Vec2 e(std::cos(theta), std::sin(theta));
  const Vec2 ie(-e[1], e[0]);
  return (frame_->transverse_jacobian(t, 0.0, 0.0) * e).dot(ie);
}

}  // namespace sos::boundary
