#pragma once

#include <functional>
#include <vector>

#include "sos/common/types.hpp"

namespace sos {

// Scalar samples on a uniform doubly periodic grid over [0,Lx) x [0,Ly).
// Node (i,j) sits at (i*Lx/nx, j*Ly/ny). Evaluation uses bicubic Catmull-Rom
// interpolation: C^1, third-order accurate for smooth data, exact for
// constants and linear trends, and reproduces grid values at the nodes.
class PeriodicGrid2d {
 public:
  PeriodicGrid2d() = default;
  PeriodicGrid2d(int nx, int ny, double lx, double ly);

  static PeriodicGrid2d sample(int nx, int ny, double lx, double ly,
                               const std::function<double(double, double)>& f);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }

  double& at(int i, int j) { return v_[index(i, j)]; }
  double at(int i, int j) const { return v_[index(i, j)]; }
  double node_x(int i) const { return lx_ * i / nx_; }
  double node_y(int j) const { return ly_ * j / ny_; }

  double eval(double x, double y) const;

  double min_value() const;
  double max_value() const;

 private:
  std::size_t index(int i, int j) const {
    int ii = i % nx_;
    if (ii < 0) ii += nx_;
    int jj = j % ny_;
    if (jj < 0) jj += ny_;
    return static_cast<std::size_t>(jj) * nx_ + ii;
  }

  int nx_ = 0, ny_ = 0;
  double lx_ = 1.0, ly_ = 1.0;
  std::vector<double> v_;
};

}  // namespace sos
