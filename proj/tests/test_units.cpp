#include <gtest/gtest.h>

#include "optomech/units.hpp"

#include "oracle_values.hpp"

using namespace optomech;

namespace {

DielectricSphere paper_sphere() { return DielectricSphere(1e-7, 1.45); }

BeamParams paper_beam() {
  BeamParams b;
  b.wavelength = 1.064e-6;
  b.rayleigh_range = 5.3e-7;
  b.cavity_length = 4e-3;
  b.power_si = 0.015;
  return b;
}

TEST(Units, BeamGeometry) {
  const BeamParams b = paper_beam();
  EXPECT_NEAR(b.wavenumber(), oracle::kWavenumber, 1e-3);
  EXPECT_NEAR(b.waist(), oracle::kWaist, 1e-15);
  EXPECT_NEAR(b.wavenumber() * b.rayleigh_range, oracle::kFocusPhase, 1e-9);
  EXPECT_DOUBLE_EQ(b.omega_nat(), b.wavenumber());
}

TEST(Units, SphereBulk) {
  const DielectricSphere s = paper_sphere();
  EXPECT_NEAR(s.susceptibility(), oracle::kSusceptibility, 1e-12);
  EXPECT_NEAR(s.mass_si(), oracle::kMassKg, 1e-27);
  EXPECT_NEAR(s.inertia_si(), 0.4 * s.mass_si() * 1e-14, 1e-45);
}

TEST(Units, PhotonNumberFromPower) {
  const BeamParams b = paper_beam();
  const double n = photon_number_from_power(b.power_si, b.cavity_length, b.wavelength);
  EXPECT_NEAR(n / oracle::kPhotonsFrom15mW, 1.0, 1e-6);
}

TEST(Units, ThermalScales) {
  const DielectricSphere s = paper_sphere();
  EXPECT_NEAR(thermal_velocity_rms_si(s.mass_si(), 300.0) / oracle::kVrms, 1.0, 1e-5);
  EXPECT_NEAR(thermal_angular_velocity_rms_si(s.inertia_si(), 300.0) / oracle::kOmegaRms,
              1.0, 1e-5);
}

TEST(Units, NaturalConversionsRoundTrip) {
  EXPECT_DOUBLE_EQ(nat::time_from_si(1e-9), 0.299792458);
  EXPECT_DOUBLE_EQ(nat::time_to_si(nat::time_from_si(12.5)), 12.5);
  EXPECT_DOUBLE_EQ(nat::mass_to_si(nat::mass_from_si(3.25e-18)), 3.25e-18);
  EXPECT_DOUBLE_EQ(nat::force_to_si(nat::force_from_si(7.5e-13)), 7.5e-13);
  EXPECT_DOUBLE_EQ(nat::inertia_to_si(nat::inertia_from_si(1e-32)), 1e-32);
  // Energy of one quantum: E = hbar omega maps to the bare wavenumber.
  EXPECT_NEAR(nat::energy_from_si(si::hbar * 2.0 * 3.141592653589793 * si::c / 1.064e-6),
              oracle::kWavenumber, 1e-3);
}

} // namespace
