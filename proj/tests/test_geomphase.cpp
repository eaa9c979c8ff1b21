#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "optomech/coupling.hpp"
#include "optomech/geomphase.hpp"
#include "optomech/local_model.hpp"
#include "optomech/mode_checks.hpp"
#include "optomech/modes.hpp"
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
  return b;
}

constexpr double kPhotons = 1e6;

VectorField lambda_field() {
  static const GaussianParaxialMode mode(paper_beam());
  return [](const Vec3& q) {
    return lambda_single(mode, paper_sphere(), q).value;
  };
}

TEST(GeomPhase, ClosedFormHeadline) {
  const double half = 0.5 * paper_beam().wavelength;
  const double theta =
      theta_axis_closed_form(paper_sphere(), paper_beam(), -half, half, kPhotons);
  EXPECT_NEAR(theta / oracle::kThetaClosed, 1.0, 1e-6);
  EXPECT_NEAR(std::abs(theta) / std::numbers::pi, 5.2512, 1e-3);
}

TEST(GeomPhase, LineIntegralHeadline) {
  const double half = 0.5 * paper_beam().wavelength;
  const PhaseResult pr = geometric_phase(lambda_field(), Vec3(0.0, 0.0, -half),
                                         Vec3(0.0, 0.0, half), kPhotons);
  EXPECT_NEAR(pr.theta / oracle::kThetaLine, 1.0, 1e-7);
  EXPECT_LT(pr.rel_error, 1e-9);
}

TEST(GeomPhase, TheTwoRoutesDisagreeBySeventeenPercent) {
  // Documented, reproducible disagreement: the closed form's axial profile
  // decays one power of (1 + (z/z_R)^2) faster than the momentum density
  // the quadrature integrates, so the line route accumulates ~17.7% more
  // phase over one wavelength around the focus. Pinning the gap keeps any
  // silent change in either route from slipping through.
  const double gap = std::abs(oracle::kThetaLine - oracle::kThetaClosed) /
                     std::abs(oracle::kThetaClosed);
  EXPECT_NEAR(gap, 0.1771, 5e-4);
}

TEST(GeomPhase, PhaseIsLinearInPhotonNumber) {
  const double half = 0.25 * paper_beam().wavelength;
  const Vec3 a(0.0, 0.0, -half), b(0.0, 0.0, half);
  const double t1 = geometric_phase(lambda_field(), a, b, 1.0, 4, 6, false).theta;
  const double t2 = geometric_phase(lambda_field(), a, b, 2.5e5, 4, 6, false).theta;
  EXPECT_NEAR(t2 / t1, 2.5e5, 1e-6 * 2.5e5);
}

TEST(GeomPhase, ReversedPathFlipsSign) {
  const double half = 0.25 * paper_beam().wavelength;
  const Vec3 a(0.0, 0.0, -half), b(0.0, 0.0, half);
  const double fwd = geometric_phase(lambda_field(), a, b, kPhotons, 4, 6, false).theta;
  const double bwd = geometric_phase(lambda_field(), b, a, kPhotons, 4, 6, false).theta;
  EXPECT_NEAR(fwd + bwd, 0.0, 1e-10 * std::abs(fwd));
}

TEST(GeomPhase, SweepIsMonotoneOddAndConsistent) {
  const double half = 0.5 * paper_beam().wavelength;
  const auto rows = figure_sweep_axis(lambda_field(), paper_sphere(), paper_beam(),
                                      -half, half, 21, kPhotons);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_DOUBLE_EQ(rows.front().theta_line, 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(std::abs(rows[i].theta_line), std::abs(rows[i - 1].theta_line));
    EXPECT_GE(std::abs(rows[i].theta_closed), std::abs(rows[i - 1].theta_closed));
  }
  // Accumulated increments are odd-symmetric about the focus (row 10).
  const double span = std::abs(rows.back().theta_line);
  for (int j = 1; j <= 10; ++j) {
    const double up = rows[10 + j].theta_line - rows[10].theta_line;
    const double dn = rows[10].theta_line - rows[10 - j].theta_line;
    EXPECT_NEAR(up, dn, 1e-9 * span) << "offset " << j;
  }
  // Endpoint agrees with the single-path evaluation over the same segment.
  const PhaseResult direct = geometric_phase(lambda_field(), Vec3(0.0, 0.0, -half),
                                             Vec3(0.0, 0.0, half), kPhotons, 20, 8,
                                             false);
  EXPECT_NEAR(rows.back().theta_line / direct.theta, 1.0, 1e-8);
  EXPECT_NEAR(rows.back().theta_closed / oracle::kThetaClosed, 1.0, 1e-9);
}

TEST(GeomPhase, VelocityPhaseShiftThermal) {
  const DielectricSphere s = paper_sphere();
  const BeamParams b = paper_beam();
  // Reference magnitude uses the focus closed form; the sign is negative
  // for motion along the propagation direction (lambda points along -z).
  const Vec3 lam0 = lambda_focus_closed_form(s, b);
  const double v = thermal_velocity_rms_si(s.mass_si(), 300.0);
  const double w = thermal_angular_velocity_rms_si(s.inertia_si(), 300.0);
  const double phase = velocity_phase_shift(Vec3(0.0, 0.0, v), Vec3(w, 0.0, 0.0),
                                            lam0, Vec3::Zero(), 1e-4);
  EXPECT_NEAR(phase / -oracle::kVelocityPhase, 1.0, 1e-9);
  // The ball-quadrature coupling at R = 100 nm sits a few percent below the
  // closed form; the estimate survives at the same order.
  const GaussianParaxialMode mode(b);
  const Vec3 lam_quad = lambda_single(mode, s, Vec3::Zero()).value;
  const Vec3 gam_quad = gamma_single(mode, s, Vec3::Zero()).value;
  const double phase_quad = velocity_phase_shift(Vec3(0.0, 0.0, v), Vec3(w, 0.0, 0.0),
                                                 lam_quad, gam_quad, 1e-4);
  EXPECT_NEAR(phase_quad / phase, 1.0, 0.1);
}

TEST(GeomPhase, ForceHierarchyAtThermalSpeed) {
  const DielectricSphere s = paper_sphere();
  const BeamParams b = paper_beam();
  const PointSphereModel model(std::make_shared<GaussianParaxialMode>(b), s);
  auto lam = [&](const Vec3& q) { return model.lambda(q); };
  auto gam = [&](const Vec3& q) { return model.gamma(q); };
  auto omg = [&](const Vec3& q) { return model.omega(q); };
  const Vec3 q(0.25 * b.waist(), 0.0, 0.3 * b.rayleigh_range);
  const double v = thermal_velocity_rms_si(s.mass_si(), 300.0);
  const double w = thermal_angular_velocity_rms_si(s.inertia_si(), 300.0);
  const Vec3 v_nat = nat::velocity_from_si(v) * Vec3(0, 0, 1);
  const Vec3 w_nat = nat::angfreq_from_si(w) * Vec3(1, 0, 0);
  const ForceReport fr = nonadiabatic_force(lam, gam, omg, q, v_nat, w_nat, kPhotons,
                                            1e-3 * b.rayleigh_range);
  EXPECT_NEAR(nat::force_to_si(fr.trap_force.norm()) / oracle::kTrapForceN, 1.0, 1e-3);
  const double ratio = (fr.velocity_force + fr.rotation_force).norm() /
                       fr.trap_force.norm();
  EXPECT_NEAR(ratio / oracle::kForceRatio, 1.0, 0.01);
  EXPECT_LT(fr.fd_consistency, 1e-3);

  // The R = 100 nm ball quadrature smooths the fields but keeps the
  // hierarchy: both the trap force and the ratio stay within 15 percent.
  const GaussianParaxialMode mode(b);
  auto lam_q = [&](const Vec3& p) { return lambda_single(mode, s, p).value; };
  auto gam_q = [&](const Vec3& p) { return gamma_single(mode, s, p).value; };
  auto omg_q = [&](const Vec3& p) { return mode_frequency_shift(mode, s, p); };
  const ForceReport fq = nonadiabatic_force(lam_q, gam_q, omg_q, q, v_nat, w_nat,
                                            kPhotons, 1e-3 * b.rayleigh_range);
  EXPECT_NEAR(fq.trap_force.norm() / fr.trap_force.norm(), 1.0, 0.15);
  const double ratio_q = (fq.velocity_force + fq.rotation_force).norm() /
                         fq.trap_force.norm();
  EXPECT_NEAR(ratio_q / ratio, 1.0, 0.15);
}

TEST(GeomPhase, FiniteDifferenceHelpers) {
  // curl of a linear solenoidal field is exact; gradient of a quadratic too.
  auto field = [](const Vec3& r) { return Vec3(-r.y(), r.x(), 0.0); };
  const Vec3 c = fd_curl_field(field, Vec3(0.3, -0.2, 0.9), 1e-4);
  EXPECT_NEAR(c.z(), 2.0, 1e-10);
  EXPECT_NEAR(c.x(), 0.0, 1e-10);
  auto scalar = [](const Vec3& r) { return r.squaredNorm(); };
  const Vec3 g = fd_gradient(scalar, Vec3(0.5, 1.0, -2.0), 1e-5);
  EXPECT_NEAR((g - Vec3(1.0, 2.0, -4.0)).norm(), 0.0, 1e-9);
}

} // namespace
