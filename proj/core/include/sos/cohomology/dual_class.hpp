#pragma once

#include <vector>

#include "sos/cohomology/one_form.hpp"
#include "sos/geometry/scenario.hpp"

namespace sos::cohomology {

// Class data restricted to one boundary torus, in the aligned chart basis
// (dt, dtheta), together with the declared meridian pairing sign.
struct BoundaryClassCoeffs {
  double p = 0.0;
  double q = 0.0;
  int eps = 1;
  double period = kTwoPi;
};

// A first-cohomology class of the link complement, stored either as integer
// pairings with the coordinate loops of a closed 3-torus or as per-component
// boundary coefficients.  The stored numbers carry redundancy (sign,
// meridian normalization, alignment), so consumers call validate() before
// trusting them and representative() to get a concrete closed form.
class DualClass {
 public:
  static DualClass interior(const Vec3& y);
  static DualClass tube(int eps, double period);
  static DualClass fibration(int eps);

  bool is_interior() const { return interior_kind_; }
  bool is_fibration() const { return fibration_kind_; }
  int components() const { return static_cast<int>(comps_.size()); }
  const BoundaryClassCoeffs& coeffs(int j) const { return comps_.at(j); }
  const Vec3& interior_coeffs() const;

  // Meridian then longitude pairing per boundary component; coordinate-loop
  // pairings for interior classes.
  std::vector<double> declared_pairings() const;

  // Checks the stored data against the normalization this artifact uses:
  // eps in {+1, -1}, meridian pairing 2 pi q equal to eps within 1e-9,
  // longitude pairing p * period zero within 1e-9 (aligned charts), and
  // integer coordinate pairings for interior classes.  Throws ClassError.
  void validate() const;

  // Concrete closed representative on the scenario's canonical chart.
  // Throws ClassError when the class shape does not match the scenario.
  GridOneForm representative(const geometry::Scenario& s) const;

 private:
  DualClass() = default;
  bool interior_kind_ = false;
  bool fibration_kind_ = false;
  Vec3 y_ = Vec3::Zero();
  std::vector<BoundaryClassCoeffs> comps_;
};

}  // namespace sos::cohomology
