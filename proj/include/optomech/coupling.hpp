#ifndef OPTOMECH_COUPLING_HPP
#define OPTOMECH_COUPLING_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "optomech/modes.hpp"
#include "optomech/quadrature.hpp"
#include "optomech/units.hpp"

namespace optomech {

// Which terms of the mode-coupling integrals are evaluated. The instantaneous
// modes are approximated by the empty-cavity family, so the term involving
// parametric derivatives of the mode functions is dropped; only the
// material-weighted curl term remains. The enum records that truncation in
// every call signature rather than hiding it.
enum class CouplingTerms {
  weak_scattering,  // material curl term only; mode-derivative term = 0
};

struct CouplingResult {
  Vec3 value = Vec3::Zero();
  double rel_error = 0.0;  // order-doubling estimate, relative
};

struct ComplexCouplingResult {
  CVec3 value = CVec3::Zero();
  double rel_error = 0.0;
};

// All four directional coefficients between modes k and j for the ball at q:
//   eta1 = -(n^2-1) int_ball f_k  x (curl f_j)
//   eta2 = -(n^2-1) int_ball f_k* x (curl f_j)
//   g1   = -(n^2-1) int_ball (r-q) x [f_k  x (curl f_j)]
//   g2   = -(n^2-1) int_ball (r-q) x [f_k* x (curl f_j)]
// For real modes eta1 == eta2 and g1 == g2.
struct ComplexCouplingSet {
  CVec3 eta1 = CVec3::Zero();
  CVec3 eta2 = CVec3::Zero();
  CVec3 g1 = CVec3::Zero();
  CVec3 g2 = CVec3::Zero();
  double rel_error = 0.0;
};

namespace detail {

struct CouplingAccum {
  CVec3 eta1 = CVec3::Zero();
  CVec3 eta2 = CVec3::Zero();
  CVec3 g1 = CVec3::Zero();
  CVec3 g2 = CVec3::Zero();

  CouplingAccum operator+(const CouplingAccum& o) const {
    CouplingAccum r;
    r.eta1 = eta1 + o.eta1;
    r.eta2 = eta2 + o.eta2;
    r.g1 = g1 + o.g1;
    r.g2 = g2 + o.g2;
    return r;
  }
  CouplingAccum& operator+=(const CouplingAccum& o) {
    eta1 += o.eta1;
    eta2 += o.eta2;
    g1 += o.g1;
    g2 += o.g2;
    return *this;
  }
  CouplingAccum operator*(double s) const {
    CouplingAccum r;
    r.eta1 = eta1 * s;
    r.eta2 = eta2 * s;
    r.g1 = g1 * s;
    r.g2 = g2 * s;
    return r;
  }
  double norm() const {
    return std::sqrt(eta1.squaredNorm() + eta2.squaredNorm() + g1.squaredNorm() +
                     g2.squaredNorm());
  }
};

inline CouplingAccum coupling_integrand(const ModeField& mk, const ModeField& mj,
                                        const Vec3& q, const Vec3& r) {
  CouplingAccum a;
  const CVec3 fk = mk.value(r);
  const CVec3 cj = mj.curl(r);
  const CVec3 rel = (r - q).cast<Complex>();
  a.eta1 = ccross(fk, cj);
  a.eta2 = ccross(fk.conjugate(), cj);
  a.g1 = ccross(rel, a.eta1);
  a.g2 = ccross(rel, a.eta2);
  return a;
}

} // namespace detail

inline ComplexCouplingSet complex_coupling_coeffs(
    const ModeField& mode_k, const ModeField& mode_j, const DielectricSphere& sphere,
    const Vec3& q, const QuadratureSpec& quad = {}, int threads = 1,
    bool with_error_estimate = false, CouplingTerms terms = CouplingTerms::weak_scattering) {
  (void)terms;  // single truncation implemented; see CouplingTerms
  auto f = [&](const Vec3& r) { return detail::coupling_integrand(mode_k, mode_j, q, r); };
  const double chi = sphere.susceptibility();

  detail::CouplingAccum acc;
  double rel = 0.0;
  if (with_error_estimate) {
    auto [fine, err] = integrate_ball_checked<detail::CouplingAccum>(
        sphere.radius, q, quad, f, detail::CouplingAccum{},
        [](const detail::CouplingAccum& v) { return v.norm(); }, threads);
    acc = fine;
    rel = err;
  } else {
    SphereRule rule(sphere.radius, quad);
    acc = integrate_ball<detail::CouplingAccum>(rule, q, f, detail::CouplingAccum{}, threads);
  }

  ComplexCouplingSet out;
  out.eta1 = -chi * acc.eta1;
  out.eta2 = -chi * acc.eta2;
  out.g1 = -chi * acc.g1;
  out.g2 = -chi * acc.g2;
  out.rel_error = rel;
  return out;
}

// Real-family translational coefficient eta_kj (the curl term; the
// mode-derivative term is zero under CouplingTerms::weak_scattering).
inline CouplingResult eta_kj(const ModeField& mode_k, const ModeField& mode_j,
                             const DielectricSphere& sphere, const Vec3& q,
                             const QuadratureSpec& quad = {}, int threads = 1,
                             bool with_error_estimate = false) {
  const auto set = complex_coupling_coeffs(mode_k, mode_j, sphere, q, quad, threads,
                                           with_error_estimate);
  if (set.eta1.imag().norm() > 1e-10 * (set.eta1.real().norm() + 1e-300)) {
    throw std::invalid_argument("eta_kj expects real modes; use complex_coupling_coeffs");
  }
  return {set.eta1.real(), set.rel_error};
}

// Rotational coefficient g_kj for real modes.
inline CouplingResult g_kj(const ModeField& mode_k, const ModeField& mode_j,
                           const DielectricSphere& sphere, const Vec3& q,
                           const QuadratureSpec& quad = {}, int threads = 1,
                           bool with_error_estimate = false) {
  const auto set = complex_coupling_coeffs(mode_k, mode_j, sphere, q, quad, threads,
                                           with_error_estimate);
  if (set.g1.imag().norm() > 1e-10 * (set.g1.real().norm() + 1e-300)) {
    throw std::invalid_argument("g_kj expects real modes; use complex_coupling_coeffs");
  }
  return {set.g1.real(), set.rel_error};
}

// Per-photon velocity coupling of one complex mode (hbar = 1):
//   lambda(q) = - int_ball (eps - 1) Im[f* x (curl f)] d3r
// equivalently -(i/2)[eta2_kk - eta2_kk*].
inline CouplingResult lambda_single(const ModeField& mode, const DielectricSphere& sphere,
                                    const Vec3& q, const QuadratureSpec& quad = {},
                                    int threads = 1, bool with_error_estimate = false) {
  const auto set = complex_coupling_coeffs(mode, mode, sphere, q, quad, threads,
                                           with_error_estimate);
  return {set.eta2.imag(), set.rel_error};
}

// Per-photon rotational coupling of one complex mode (hbar = 1):
//   gamma(q) = - int_ball (eps - 1) (r - q) x Im[f* x (curl f)] d3r
inline CouplingResult gamma_single(const ModeField& mode, const DielectricSphere& sphere,
                                   const Vec3& q, const QuadratureSpec& quad = {},
                                   int threads = 1, bool with_error_estimate = false) {
  const auto set = complex_coupling_coeffs(mode, mode, sphere, q, quad, threads,
                                           with_error_estimate);
  return {set.g2.imag(), set.rel_error};
}

// Closed-form focus value of lambda for the focused beam (z-component;
// the vector points along -z for a +z-traveling beam):
//   lambda_z(0) = -(4/3) (n^2-1) / L_c (R/z_R)^3 (k z_R)^2   [hbar = 1]
inline Vec3 lambda_focus_closed_form(const DielectricSphere& sphere, const BeamParams& beam) {
  const double chi = sphere.susceptibility();
  const double zr = beam.rayleigh_range;
  const double ratio = sphere.radius / zr;
  const double kzr = beam.wavenumber() * zr;
  return Vec3(0.0, 0.0, -(4.0 / 3.0) * chi / beam.cavity_length * ratio * ratio * ratio *
                            kzr * kzr);
}

// Closed-form transverse rotational coupling near focus:
//   gamma = -(4/15)(n^2-1) z_R/L_c (R/z_R)^5 (k z_R)^2 (1 + 2 k z_R)
//           * (-q_y/z_R, q_x/z_R, 0)
// Kept as the published reference expression; the ball integral carries a
// different numerical prefactor (see tests), so this is a scale/direction
// reference, not an oracle for the quadrature.
inline Vec3 gamma_transverse_closed_form(const DielectricSphere& sphere,
                                         const BeamParams& beam, const Vec3& q) {
  const double chi = sphere.susceptibility();
  const double zr = beam.rayleigh_range;
  const double ratio = sphere.radius / zr;
  const double kzr = beam.wavenumber() * zr;
  const double pref = -(4.0 / 15.0) * chi * zr / beam.cavity_length *
                      std::pow(ratio, 5) * kzr * kzr * (1.0 + 2.0 * kzr);
  return pref * Vec3(-q.y() / zr, q.x() / zr, 0.0);
}

// Material-weighted linear field momentum over the ball for snapshot fields:
//   Lambda = int_ball (eps - 1) (E x B) d3r
inline Vec3 field_momentum_linear(const DielectricSphere& sphere, const Vec3& q,
                                  const std::function<Vec3(const Vec3&)>& efield,
                                  const std::function<Vec3(const Vec3&)>& bfield,
                                  const QuadratureSpec& quad = {}, int threads = 1) {
  SphereRule rule(sphere.radius, quad);
  auto f = [&](const Vec3& r) -> Vec3 { return efield(r).cross(bfield(r)); };
  return sphere.susceptibility() *
         integrate_ball<Vec3>(rule, q, f, Vec3(Vec3::Zero()), threads);
}

// Material-weighted angular field momentum about the ball center:
//   Gamma = int_ball (eps - 1) (r - q) x (E x B) d3r
inline Vec3 field_momentum_angular(const DielectricSphere& sphere, const Vec3& q,
                                   const std::function<Vec3(const Vec3&)>& efield,
                                   const std::function<Vec3(const Vec3&)>& bfield,
                                   const QuadratureSpec& quad = {}, int threads = 1) {
  SphereRule rule(sphere.radius, quad);
  auto f = [&](const Vec3& r) -> Vec3 { return (r - q).cross(efield(r).cross(bfield(r))); };
  return sphere.susceptibility() *
         integrate_ball<Vec3>(rule, q, f, Vec3(Vec3::Zero()), threads);
}

} // namespace optomech

#endif
