#ifndef OPTOMECH_UNITS_HPP
#define OPTOMECH_UNITS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "optomech/constants.hpp"

namespace optomech {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;

// Plain component-wise cross product. Eigen's cross() conjugates each
// component for complex scalars, which is not the bilinear product the
// field algebra here needs.
inline CVec3 ccross(const CVec3& a, const CVec3& b) {
  return CVec3(a.y() * b.z() - a.z() * b.y(),
               a.z() * b.x() - a.x() * b.z(),
               a.x() * b.y() - a.y() * b.x());
}

// Uniform dielectric ball. Geometry and material only; position is passed
// separately so one sphere object can be reused along a trajectory.
struct DielectricSphere {
  double radius = 0.0;            // m
  double refractive_index = 1.0;  // n, real
  double density_si = 2200.0;     // kg/m^3 (fused silica default)

  DielectricSphere() = default;
  DielectricSphere(double R, double n, double rho = 2200.0)
      : radius(R), refractive_index(n), density_si(rho) {
    if (!(R > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    if (!(n >= 1.0)) throw std::invalid_argument("refractive index must be >= 1");
    if (!(rho > 0.0)) throw std::invalid_argument("density must be positive");
  }

  double volume() const { return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius; }
  // eps - 1 inside the ball; the permittivity step is kept sharp, all
  // interior-weighted integrals restrict their domain to |r - q| <= R.
  double susceptibility() const { return refractive_index * refractive_index - 1.0; }

  double mass_si() const { return volume() * density_si; }
  double inertia_si() const { return 0.4 * mass_si() * radius * radius; }  // solid ball
  double mass_nat() const { return nat::mass_from_si(mass_si()); }
  double inertia_nat() const { return nat::inertia_from_si(inertia_si()); }
};

// Piecewise-constant relative permittivity of the ball at position q.
inline double permittivity(const DielectricSphere& s, const Vec3& q, const Vec3& r) {
  const double n = s.refractive_index;
  return ((r - q).squaredNorm() <= s.radius * s.radius) ? n * n : 1.0;
}

// Beam/cavity parameters for the focused-mode family. SI lengths.
struct BeamParams {
  double wavelength = 0.0;      // vacuum wavelength, m
  double rayleigh_range = 0.0;  // z_R, m
  double cavity_length = 0.0;   // normalization length L_c, m
  double power_si = 0.0;        // circulating power, W (0 = unspecified)

  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
  double waist() const { return std::sqrt(2.0 * rayleigh_range / wavenumber()); }
  double omega_nat() const { return wavenumber(); }  // c = 1
};

// Mean intracavity photon number of a mode of length L_c holding power P:
// the stored energy is P * (L_c / c), each photon carries hbar * omega.
inline double photon_number_from_power(double power_si, double cavity_length,
                                       double wavelength) {
  if (!(power_si >= 0.0)) throw std::invalid_argument("power must be non-negative");
  const double omega_si = 2.0 * std::numbers::pi * si::c / wavelength;
  return power_si * (cavity_length / si::c) / (si::hbar * omega_si);
}

inline double thermal_velocity_rms_si(double mass_si, double temperature_k) {
  // one-axis rms of the Maxwell distribution, sqrt(kB T / m)
  return std::sqrt(si::kB * temperature_k / mass_si);
}

inline double thermal_angular_velocity_rms_si(double inertia_si, double temperature_k) {
  return std::sqrt(si::kB * temperature_k / inertia_si);
}

} // namespace optomech

#endif
