#include "sos/cohomology/dual_class.hpp"

#include <cmath>

namespace sos::cohomology {

using geometry::Scenario;

DualClass DualClass::interior(const Vec3& y) {
  DualClass c;
  c.interior_kind_ = true;
  c.y_ = y;
  return c;
}

DualClass DualClass::tube(int eps, double period) {
  if (!(period > 0.0)) throw ClassError("DualClass: tube period must be positive");
  DualClass c;
  BoundaryClassCoeffs b;
  b.p = 0.0;
  b.q = eps / kTwoPi;
  b.eps = eps;
  b.period = period;
  c.comps_.push_back(b);
  return c;
}

DualClass DualClass::fibration(int eps) {
  DualClass c = tube(eps, kTwoPi);
  c.fibration_kind_ = true;
  return c;
}

const Vec3& DualClass::interior_coeffs() const {
  if (!interior_kind_) throw ClassError("DualClass: no interior coefficients");
  return y_;
}

std::vector<double> DualClass::declared_pairings() const {
  std::vector<double> out;
  if (interior_kind_) {
    for (int i = 0; i < 3; ++i) out.push_back(y_[i]);
    return out;
  }
  for (const auto& b : comps_) {
    out.push_back(kTwoPi * b.q);   // meridian
    out.push_back(b.p * b.period); // longitude, aligned chart
  }
  return out;
}

void DualClass::validate() const {
  if (interior_kind_) {
    for (int i = 0; i < 3; ++i)
      if (std::abs(y_[i] - std::round(y_[i])) > 1e-9)
        throw ClassError("DualClass: interior pairings must be integers");
    return;
  }
  if (comps_.empty()) throw ClassError("DualClass: no boundary components");
  for (const auto& b : comps_) {
    if (b.eps != 1 && b.eps != -1)
      throw ClassError("DualClass: meridian sign must be +-1");
    if (std::abs(kTwoPi * b.q - b.eps) > 1e-9)
      throw ClassError("DualClass: meridian pairing does not match its sign");
    if (std::abs(b.p * b.period) > 1e-9)
      throw ClassError("DualClass: longitude pairing must vanish in aligned charts");
    if (!(b.period > 0.0)) throw ClassError("DualClass: period must be positive");
  }
}

GridOneForm DualClass::representative(const Scenario& s) const {
  validate();
  if (interior_kind_) {
    if (dynamic_cast<const geometry::T3Linear*>(&s) == nullptr)
      throw ClassError("DualClass: interior classes need a closed 3-torus scenario");
    return GridOneForm::flat3(y_);
  }
  if (fibration_kind_) {
    if (dynamic_cast<const geometry::HopfS3*>(&s) == nullptr)
      throw ClassError("DualClass: fibration classes need a fibration scenario");
    return GridOneForm::fibration(comps_[0].eps);
  }
  const bool tube_ok = dynamic_cast<const geometry::SolidTorusModel*>(&s) != nullptr ||
                       dynamic_cast<const geometry::SolidTorusLinear*>(&s) != nullptr;
  if (!tube_ok)
    throw ClassError("DualClass: tube classes need a solid-torus scenario");
  const auto& b = comps_[0];
  if (std::abs(b.period - s.characteristic_period()) > 1e-9 * b.period)
    throw ClassError("DualClass: stored period does not match the scenario");
  return GridOneForm::tube(b.p, b.q, b.period);
}

}  // namespace sos::cohomology
