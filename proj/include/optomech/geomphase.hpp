#ifndef OPTOMECH_GEOMPHASE_HPP
#define OPTOMECH_GEOMPHASE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "optomech/constants.hpp"
#include "optomech/coupling.hpp"
#include "optomech/modes.hpp"
#include "optomech/quadrature.hpp"
#include "optomech/units.hpp"

namespace optomech {

// A coupling field: q -> per-photon coupling vector (natural units, 1/m).
using VectorField = std::function<Vec3(const Vec3&)>;
using ScalarField = std::function<double(const Vec3&)>;

// Straight path from start to end, sampled for cumulative line integrals.
struct PathSpec {
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::Zero();
  int samples = 101;  // output rows for sweeps; integration panels are separate
};

struct PhaseResult {
  double theta = 0.0;      // radians
  double rel_error = 0.0;  // panel-doubling estimate
};

// Geometric phase accumulated by the field when the ball is dragged along
// the path: Theta = <n> * integral of lambda . dq (hbar = 1). The integral
// is composite Gauss-Legendre with panel doubling for the error estimate.
inline PhaseResult geometric_phase(const VectorField& lambda_field, const Vec3& start,
                                   const Vec3& end, double photon_number,
                                   int panels = 8, int order = 8,
                                   bool with_error_estimate = true) {
  const Vec3 d = end - start;
  const double len = d.norm();
  if (len == 0.0) return {0.0, 0.0};
  const Vec3 dir = d / len;
  auto g = [&](const Vec3& r) { return lambda_field(r).dot(dir); };
  const double coarse =
      integrate_segment<double>(start, end, panels, order, g, 0.0);
  if (!with_error_estimate) return {photon_number * coarse, 0.0};
  const double fine =
      integrate_segment<double>(start, end, 2 * panels, order, g, 0.0);
  const double rel =
      (fine != 0.0) ? std::abs(fine - coarse) / std::abs(fine) : std::abs(fine - coarse);
  return {photon_number * fine, rel};
}

// Published closed form for the on-axis phase of the focused beam between
// two axial positions (antiderivative bracket times prefactor):
//   Theta = -(2/3)(n^2-1) k^2 R^3 / L_c <n> [ x/(1+x^2) + atan x ],  x = q_z/z_R
inline double theta_axis_closed_form(const DielectricSphere& sphere, const BeamParams& beam,
                                     double qz_from, double qz_to, double photon_number) {
  const double zr = beam.rayleigh_range;
  const double k = beam.wavenumber();
  const double pref = -(2.0 / 3.0) * sphere.susceptibility() * k * k *
                      std::pow(sphere.radius, 3) / beam.cavity_length * photon_number;
  auto bracket = [&](double qz) {
    const double x = qz / zr;
    return x / (1.0 + x * x) + std::atan(x);
  };
  return pref * (bracket(qz_to) - bracket(qz_from));
}

struct SweepRow {
  double qz = 0.0;           // m
  double theta_line = 0.0;   // cumulative, quadrature coupling field
  double theta_closed = 0.0; // cumulative, closed form
};

// Cumulative phase along an axial sweep, both integration routes, starting
// at zero from the first point. The line column integrates the supplied
// coupling field segment by segment so each row reuses previous work.
inline std::vector<SweepRow> figure_sweep_axis(const VectorField& lambda_field,
                                               const DielectricSphere& sphere,
                                               const BeamParams& beam, double qz_from,
                                               double qz_to, int samples,
                                               double photon_number, int order = 8) {
  if (samples < 2) throw std::invalid_argument("sweep needs at least 2 samples");
  std::vector<SweepRow> rows(samples);
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double qz = qz_from + (qz_to - qz_from) * i / (samples - 1);
    if (i > 0) {
      const double prev = qz_from + (qz_to - qz_from) * (i - 1) / (samples - 1);
      const Vec3 a(0.0, 0.0, prev), b(0.0, 0.0, qz);
      acc += geometric_phase(lambda_field, a, b, photon_number, 1, order, false).theta;
    }
    rows[i].qz = qz;
    rows[i].theta_line = acc;
    rows[i].theta_closed =
        theta_axis_closed_form(sphere, beam, qz_from, qz, photon_number);
  }
  return rows;
}

// Jacobian of a vector field by central differences: jac(i, j) = d F_j / d q_i.
inline Mat3 fd_jacobian(const VectorField& field, const Vec3& q, double h) {
  Mat3 jac;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = h;
    jac.row(i) = (field(q + e) - field(q - e)) / (2.0 * h);
  }
  return jac;
}

inline Vec3 fd_curl_field(const VectorField& field, const Vec3& q, double h) {
  const Mat3 j = fd_jacobian(field, q, h);
  return Vec3(j(1, 2) - j(2, 1), j(2, 0) - j(0, 2), j(0, 1) - j(1, 0));
}

inline Vec3 fd_gradient(const ScalarField& field, const Vec3& q, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e[i] = h;
    g[i] = (field(q + e) - field(q - e)) / (2.0 * h);
  }
  return g;
}

struct ForceReport {
  Vec3 velocity_force = Vec3::Zero();   // <n> qdot x (curl lambda), natural 1/m^2
  Vec3 rotation_force = Vec3::Zero();   // -<n> grad(omega_rot . gamma)
  Vec3 trap_force = Vec3::Zero();       // -<n> grad omega(q)
  double fd_consistency = 0.0;          // relative h vs h/2 Richardson spread
};

// Velocity-dependent force on the dragged ball and the restoring force of
// the intensity trap, from finite differences of the coupling fields. All
// inputs and outputs in natural units; h is the differencing step in meters.
inline ForceReport nonadiabatic_force(const VectorField& lambda_field,
                                      const VectorField& gamma_field,
                                      const ScalarField& omega_field, const Vec3& q,
                                      const Vec3& velocity_nat, const Vec3& omega_rot_nat,
                                      double photon_number, double h) {
  auto eval = [&](double step) {
    ForceReport r;
    const Vec3 curl_lam = fd_curl_field(lambda_field, q, step);
    r.velocity_force = photon_number * velocity_nat.cross(curl_lam);
    auto wg = [&](const Vec3& p) { return omega_rot_nat.dot(gamma_field(p)); };
    r.rotation_force = -photon_number * fd_gradient(wg, q, step);
    r.trap_force = -photon_number * fd_gradient(omega_field, q, step);
    return r;
  };
  ForceReport coarse = eval(h);
  ForceReport fine = eval(0.5 * h);
  const double scale = fine.velocity_force.norm() + fine.rotation_force.norm() +
                       fine.trap_force.norm();
  ForceReport out = fine;
  out.fd_consistency =
      (scale > 0.0)
          ? ((fine.velocity_force - coarse.velocity_force).norm() +
             (fine.rotation_force - coarse.rotation_force).norm() +
             (fine.trap_force - coarse.trap_force).norm()) /
                scale
          : 0.0;
  return out;
}

// Optical phase accumulated by each photon of the mode over dt when the ball
// moves with velocity qdot and spins at omega_rot: the number operator picks
// up the coefficient (qdot . lambda + omega_rot . gamma) / hbar. SI inputs
// for velocity [m/s], angular velocity [rad/s] and dt [s]; lambda and gamma
// are per-photon natural-unit couplings.
inline double velocity_phase_shift(const Vec3& velocity_si, const Vec3& omega_rot_si,
                                   const Vec3& lambda_nat, const Vec3& gamma_nat,
                                   double dt_si) {
  const Vec3 v_nat = velocity_si / si::c;
  const Vec3 w_nat = omega_rot_si / si::c;
  const double rate = v_nat.dot(lambda_nat) + w_nat.dot(gamma_nat);  // 1/m
  return rate * nat::time_from_si(dt_si);
}

} // namespace optomech

#endif
