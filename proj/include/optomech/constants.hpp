#ifndef OPTOMECH_CONSTANTS_HPP
#define OPTOMECH_CONSTANTS_HPP

namespace optomech {

// CODATA 2018 exact/recommended values, SI.
namespace si {
inline constexpr double c = 2.99792458e8;          // m/s
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double kB = 1.380649e-23;         // J/K
} // namespace si

// Internal unit system: c = hbar = eps0 = 1, lengths carried in meters.
// Derived conversions (natural value = SI value * factor):
//   time        [m]    t_nat = c * t_SI
//   velocity    [-]    v_nat = v_SI / c
//   ang. freq.  [1/m]  w_nat = w_SI / c
//   mass        [1/m]  m_nat = m_SI * c / hbar
//   momentum    [1/m]  p_nat = p_SI / hbar
//   ang. mom.   [-]    J_nat = J_SI / hbar
//   inertia     [m]    I_nat = I_SI * c / hbar
//   energy      [1/m]  E_nat = E_SI / (hbar c)
//   force       [1/m^2] F_nat = F_SI / (hbar c)
namespace nat {
inline constexpr double time_from_si(double t) { return si::c * t; }
inline constexpr double time_to_si(double t) { return t / si::c; }
inline constexpr double velocity_from_si(double v) { return v / si::c; }
inline constexpr double velocity_to_si(double v) { return v * si::c; }
inline constexpr double angfreq_from_si(double w) { return w / si::c; }
inline constexpr double angfreq_to_si(double w) { return w * si::c; }
inline constexpr double mass_from_si(double m) { return m * si::c / si::hbar; }
inline constexpr double mass_to_si(double m) { return m * si::hbar / si::c; }
inline constexpr double momentum_from_si(double p) { return p / si::hbar; }
inline constexpr double momentum_to_si(double p) { return p * si::hbar; }
inline constexpr double angmom_from_si(double j) { return j / si::hbar; }
inline constexpr double angmom_to_si(double j) { return j * si::hbar; }
inline constexpr double inertia_from_si(double i) { return i * si::c / si::hbar; }
inline constexpr double inertia_to_si(double i) { return i * si::hbar / si::c; }
inline constexpr double energy_from_si(double e) { return e / (si::hbar * si::c); }
inline constexpr double energy_to_si(double e) { return e * si::hbar * si::c; }
inline constexpr double force_from_si(double f) { return f / (si::hbar * si::c); }
inline constexpr double force_to_si(double f) { return f * si::hbar * si::c; }
} // namespace nat

} // namespace optomech

#endif
