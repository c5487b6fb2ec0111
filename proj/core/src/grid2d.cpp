#include "sos/common/grid2d.hpp"

#include <algorithm>
#include <cmath>

namespace sos {

PeriodicGrid2d::PeriodicGrid2d(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), v_(static_cast<std::size_t>(nx) * ny, 0.0) {
  if (nx < 4 || ny < 4) throw std::invalid_argument("PeriodicGrid2d: need at least 4x4 nodes");
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("PeriodicGrid2d: periods must be positive");
}

PeriodicGrid2d PeriodicGrid2d::sample(int nx, int ny, double lx, double ly,
                                      const std::function<double(double, double)>& f) {
  PeriodicGrid2d g(nx, ny, lx, ly);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) g.at(i, j) = f(g.node_x(i), g.node_y(j));
  return g;
}

namespace {
inline double catmull_rom(double p0, double p1, double p2, double p3, double s) {
  return p1 + 0.5 * s * (p2 - p0 +
         s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
         s * (3.0 * (p1 - p2) + p3 - p0)));
}
}  // namespace

double PeriodicGrid2d::eval(double x, double y) const {
  const double u = wrap_into(x, lx_) / lx_ * nx_;
  const double v = wrap_into(y, ly_) / ly_ * ny_;
  int i = static_cast<int>(std::floor(u));
  int j = static_cast<int>(std::floor(v));
  double s = u - i;
  double t = v - j;
  if (i >= nx_) { i -= nx_; }
  if (j >= ny_) { j -= ny_; }

  double col[4];
  for (int dj = -1; dj <= 2; ++dj) {
    col[dj + 1] = catmull_rom(at(i - 1, j + dj), at(i, j + dj), at(i + 1, j + dj),
                              at(i + 2, j + dj), s);
  }
  return catmull_rom(col[0], col[1], col[2], col[3], t);
}

double PeriodicGrid2d::min_value() const { return *std::min_element(v_.begin(), v_.end()); }
double PeriodicGrid2d::max_value() const { return *std::max_element(v_.begin(), v_.end()); }

}  // namespace sos
