#ifndef OPTOMECH_LOCAL_MODEL_HPP
#define OPTOMECH_LOCAL_MODEL_HPP

#include <cmath>

#include "optomech/coupling.hpp"
#include "optomech/modes.hpp"
#include "optomech/units.hpp"

namespace optomech {

// Small-ball (point-sphere) limit of the coupling fields of one complex mode.
// With D(r) = Im[f* x (curl f)] and chi = n^2 - 1:
//   lambda(q) ~ -chi V D(q)                     (ball volume V, error O((R/w)^2))
//   gamma(q)  ~ -chi (V R^2 / 5) curl D (q)     (leading moment of (r-q))
//   omega(q)  ~ omega0 [1 - (chi V / 2) |f(q)|^2]
// These are smooth closed-point evaluations, cheap enough for time stepping;
// the ball quadrature remains the reference they are tested against.
class PointSphereModel {
 public:
  PointSphereModel(ModePtr mode, const DielectricSphere& sphere)
      : mode_(std::move(mode)), sphere_(sphere), chi_(sphere.susceptibility()),
        vol_(sphere.volume()) {}

  Vec3 momentum_density(const Vec3& r) const {
    const CVec3 f = mode_->value(r);
    const CVec3 c = mode_->curl(r);
    return ccross(f.conjugate(), c).imag();
  }

  Vec3 lambda(const Vec3& q) const { return -chi_ * vol_ * momentum_density(q); }

  Vec3 gamma(const Vec3& q) const {
    // curl of the momentum density by central differences; the density is
    // analytic and smooth so a step tied to the field scale is accurate.
    const double h = fd_step();
    Mat3 jac;  // jac(i, j) = d D_j / d q_i
    for (int i = 0; i < 3; ++i) {
      Vec3 e = Vec3::Zero();
      e[i] = h;
      jac.row(i) = (momentum_density(q + e) - momentum_density(q - e)) / (2.0 * h);
    }
    const Vec3 curl_d(jac(1, 2) - jac(2, 1), jac(2, 0) - jac(0, 2), jac(0, 1) - jac(1, 0));
    return -chi_ * (vol_ * sphere_.radius * sphere_.radius / 5.0) * curl_d;
  }

  double omega(const Vec3& q) const {
    return mode_->omega() * (1.0 - 0.5 * chi_ * vol_ * mode_->value(q).squaredNorm());
  }

  const DielectricSphere& sphere() const { return sphere_; }
  const ModeField& mode() const { return *mode_; }

 private:
  double fd_step() const {
    // for the focused family the natural scale is the Rayleigh range;
    // fall back to the wavelength for box families
    if (const auto* g = dynamic_cast<const GaussianParaxialMode*>(mode_.get())) {
      return 1e-4 * g->beam().rayleigh_range;
    }
    return 1e-4 * (2.0 * std::numbers::pi / mode_->omega());
  }

  ModePtr mode_;
  DielectricSphere sphere_;
  double chi_;
  double vol_;
};

} // namespace optomech

#endif
