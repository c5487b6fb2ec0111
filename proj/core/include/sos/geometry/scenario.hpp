#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sos/common/types.hpp"

namespace sos::geometry {

class TubularFrame;

// A periodic-orbit component of the scenario's distinguished link, given by a
// seed close to the orbit and a period guess for the refinement stage.
struct LinkComponent {
  int index = 0;
  StateVec seed;
  double period_guess = 0.0;
  std::string label;
};

// A model flow presented in explicit chart coordinates. Charts are either
// genuinely 3-dimensional with periodic identifications (flat torus, solid
// torus) or embeddings into R^4/R^6 with a constraint manifold (3-sphere,
// unit tangent bundle); `wrap` applies deck transformations once a coordinate
// drifts past the overlap margin, `project` renormalizes onto the constraint
// set after each accepted integration step.
class Scenario {
 public:
  virtual ~Scenario() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;

  // Vector field in chart coordinates. Throws std::domain_error off-atlas.
  virtual StateVec field(const StateVec& p) const = 0;
  // Analytic chart-coordinate Jacobian of the field.
  virtual MatX jacobian(const StateVec& p) const = 0;

  virtual bool in_domain(const StateVec& p) const = 0;
  virtual StateVec wrap(const StateVec& p) const { return p; }
  // Per-coordinate deck periods (0 for non-angular coordinates). Angular
  // coordinates may be integrated unwrapped; displacements are reduced by
  // this lattice.
  virtual StateVec angular_periods() const {
    StateVec z(state_dim());
    z.setZero();
    return z;
  }
  virtual bool has_constraint() const { return false; }
  virtual void project(StateVec&) const {}

  // Geometry-aware distance between chart points (handles periodic wrap and
  // the polar degeneracy at tube cores, where coordinate differences lie).
  virtual double distance(const StateVec& a, const StateVec& b) const = 0;

  virtual std::vector<LinkComponent> link() const { return {}; }

  // Aligned tubular frame around a link component. Scenarios without explicit
  // frames (the geodesic flow) throw ClassError.
  virtual std::unique_ptr<TubularFrame> tubular_frame(int component) const;

  // Time scale used for default horizons and step budgets.
  virtual double characteristic_period() const = 0;
};

// Central finite-difference Jacobian, used to cross-check the analytic one.
MatX fd_jacobian(const Scenario& s, const StateVec& p, double h = 1e-5);

// X = (w1, w2, w3) constant on R^3/Z^3.
class T3Linear : public Scenario {
 public:
  explicit T3Linear(const Vec3& omega) : omega_(omega) {}
  std::string name() const override { return "t3_linear"; }
  int state_dim() const override { return 3; }
  StateVec field(const StateVec& p) const override;
  MatX jacobian(const StateVec& p) const override;
  bool in_domain(const StateVec&) const override { return true; }
  StateVec wrap(const StateVec& p) const override;
  StateVec angular_periods() const override;
  double distance(const StateVec& a, const StateVec& b) const override;
  double characteristic_period() const override;
  const Vec3& omega() const { return omega_; }

 private:
  Vec3 omega_;
};

// X = d/dt + f(r) d/dtheta on (R/T Z) x D^2 in coordinates (t, r, theta),
// f a polynomial in r. The core circle {r = 0} is the single link component.
class SolidTorusModel : public Scenario {
 public:
  SolidTorusModel(std::vector<double> f_coeffs, double period);
  std::string name() const override { return "solid_torus"; }
  int state_dim() const override { return 3; }
  StateVec field(const StateVec& p) const override;
  MatX jacobian(const StateVec& p) const override;
  bool in_domain(const StateVec& p) const override;
  StateVec wrap(const StateVec& p) const override;
  StateVec angular_periods() const override;
  double distance(const StateVec& a, const StateVec& b) const override;
  std::vector<LinkComponent> link() const override;
  std::unique_ptr<TubularFrame> tubular_frame(int component) const override;
  double characteristic_period() const override { return period_; }
  double f(double r) const;
  double df(double r) const;
  double period() const { return period_; }

 private:
  std::vector<double> f_;
  double period_;
};

// Transversally affine model on the same solid torus chart: the transverse
// velocity is A2 w + kappa w^2 (w = r e^{i theta}, complex square), so the
// core linearization is exactly A2 and the first-order radial correction to
// the angular velocity is r * Im(kappa e^{i theta}).
class SolidTorusLinear : public Scenario {
 public:
  SolidTorusLinear(const Mat2& a2, Cplx kappa, double period);
  std::string name() const override { return "solid_torus_linear"; }
  int state_dim() const override { return 3; }
  StateVec field(const StateVec& p) const override;
  MatX jacobian(const StateVec& p) const override;
  bool in_domain(const StateVec& p) const override;
  StateVec wrap(const StateVec& p) const override;
  StateVec angular_periods() const override;
  double distance(const StateVec& a, const StateVec& b) const override;
  std::vector<LinkComponent> link() const override;
  std::unique_ptr<TubularFrame> tubular_frame(int component) const override;
  double characteristic_period() const override { return period_; }
  const Mat2& a2() const { return a2_; }
  Cplx kappa() const { return kappa_; }
  double period() const { return period_; }

 private:
  Mat2 a2_;
  Cplx kappa_;
  double period_;
};

// z -> i z on the unit 3-sphere in C^2 = R^4; all orbits are fibers of the
// circle fibration, the link component is the fiber through (1, 0).
class HopfS3 : public Scenario {
 public:
  explicit HopfS3(double rho_max = 0.7) : rho_max_(rho_max) {}
  std::string name() const override { return "hopf_s3"; }
  int state_dim() const override { return 4; }
  StateVec field(const StateVec& p) const override;
  MatX jacobian(const StateVec& p) const override;
  bool in_domain(const StateVec& p) const override;
  bool has_constraint() const override { return true; }
  void project(StateVec& p) const override;
  double distance(const StateVec& a, const StateVec& b) const override;
  std::vector<LinkComponent> link() const override;
  std::unique_ptr<TubularFrame> tubular_frame(int component) const override;
  double characteristic_period() const override { return kTwoPi; }
  double rho_max() const { return rho_max_; }

 private:
  double rho_max_;
};

// Geodesic flow of the round 2-sphere on the unit tangent bundle embedded in
// R^6 as {(x, v) : |x| = |v| = 1, x . v = 0}; the field is (v, -x).
class GeodesicS2 : public Scenario {
 public:
  GeodesicS2() = default;
  std::string name() const override { return "geodesic_s2"; }
  int state_dim() const override { return 6; }
  StateVec field(const StateVec& p) const override;
  MatX jacobian(const StateVec& p) const override;
  bool in_domain(const StateVec& p) const override;
  bool has_constraint() const override { return true; }
  void project(StateVec& p) const override;
  double distance(const StateVec& a, const StateVec& b) const override;
  std::vector<LinkComponent> link() const override;
  double characteristic_period() const override { return kTwoPi; }
};

}  // namespace sos::geometry
