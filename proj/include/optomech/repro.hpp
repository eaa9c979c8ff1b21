#ifndef OPTOMECH_REPRO_HPP
#define OPTOMECH_REPRO_HPP

#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "optomech/config.hpp"
#include "optomech/coupling.hpp"
#include "optomech/dynamics.hpp"
#include "optomech/geomphase.hpp"
#include "optomech/local_model.hpp"
#include "optomech/mode_checks.hpp"
#include "optomech/modes.hpp"
#include "optomech/units.hpp"

namespace optomech::repro {

// Reproduction targets and tolerances. Each constant is referenced by
// exactly one criterion below; none are adjusted at runtime.
inline constexpr double kThetaBandLoPi = 5.0;    // |Theta|/pi window, both routes
inline constexpr double kThetaBandHiPi = 5.7;
inline constexpr double kThetaAgreeRel = 0.02;   // mutual agreement of the routes
inline constexpr double kC1RuntimeS = 10.0;
inline constexpr int kSweepPoints = 101;
inline constexpr double kSweepSymmetryRel = 1e-9;
inline constexpr double kSweepEndpointRel = 1e-8;
inline constexpr double kC2RuntimeS = 60.0;
inline constexpr double kFocusAgreeCoarse = 0.10;  // R = 100 nm
inline constexpr double kFocusAgreeFine = 0.02;    // R = 12.5 nm
inline constexpr double kC3RuntimeS = 60.0;
inline constexpr double kRealModeNullRel = 1e-10;
inline constexpr double kPhaseShiftTargetRad = 5.1e-5;
inline constexpr double kPhaseShiftOrderBand = 10.0;  // within one order of magnitude
inline constexpr double kForceRatioMax = 1e-2;
inline constexpr double kEnergyDriftRel = 1e-6;
inline constexpr double kReversalMax = 1e-8;
inline constexpr double kNormDriftMax = 1e-6;
inline constexpr double kC7RuntimeS = 120.0;
inline constexpr long kC7Steps = 100000;
inline constexpr long kC7ReversalSteps = 10000;
inline constexpr double kResonanceContrastMin = 10.0;
inline constexpr double kResonanceOracleRel = 0.05;
inline constexpr double kGramMax = 1e-10;
inline constexpr double kGaugeMax = 1e-8;
inline constexpr double kOrderDoublingMax = 1e-8;

struct CriterionResult {
  int index = 0;
  std::string title;
  bool pass = false;
  double runtime_s = 0.0;
  std::vector<std::string> notes;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }
 private:
  std::chrono::steady_clock::time_point t0_;
};

inline std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Check {
  bool ok = true;
  void require(bool cond) { ok = ok && cond; }
};

} // namespace detail

struct Fixture {
  DielectricSphere sphere;
  BeamParams beam;
  double photon_number = 0.0;
  QuadratureSpec quad;
  int threads = 1;
  std::shared_ptr<const GaussianParaxialMode> gaussian;

  static Fixture from_config(const RunConfig& cfg, int threads) {
    Fixture fx{cfg.sphere, cfg.beam, cfg.photon_number, cfg.quadrature, threads, nullptr};
    fx.gaussian = std::make_shared<GaussianParaxialMode>(cfg.beam);
    if (!(fx.photon_number > 0.0)) {
      throw std::invalid_argument("reproduction suite needs a photon number");
    }
    return fx;
  }

  VectorField lambda_field() const {
    return [this](const Vec3& q) {
      return lambda_single(*gaussian, sphere, q, quad, threads).value;
    };
  }
  VectorField gamma_field() const {
    return [this](const Vec3& q) {
      return gamma_single(*gaussian, sphere, q, quad, threads).value;
    };
  }
  ScalarField omega_field_quadrature() const {
    return [this](const Vec3& q) {
      return mode_frequency_shift(*gaussian, sphere, q, quad, threads);
    };
  }
};

// 1. Headline phase over one wavelength centered on the focus: closed form
// and the line integral of the quadrature coupling field, both within the
// published band and mutually consistent.
inline CriterionResult criterion1(const Fixture& fx, double* line_out = nullptr,
                                  double* closed_out = nullptr) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 1;
  r.title = "headline geometric phase, closed form vs line integral";
  const double half = 0.5 * fx.beam.wavelength;
  const Vec3 a(0.0, 0.0, -half), b(0.0, 0.0, half);
  const PhaseResult line =
      geometric_phase(fx.lambda_field(), a, b, fx.photon_number, 8, 8, false);
  const double closed =
      theta_axis_closed_form(fx.sphere, fx.beam, -half, half, fx.photon_number);
  if (line_out != nullptr) *line_out = line.theta;
  if (closed_out != nullptr) *closed_out = closed;
  r.runtime_s = sw.seconds();

  const double line_pi = std::abs(line.theta) / std::numbers::pi;
  const double closed_pi = std::abs(closed) / std::numbers::pi;
  const double agree = std::abs(line.theta - closed) / std::abs(closed);
  const bool line_in = line_pi >= kThetaBandLoPi && line_pi <= kThetaBandHiPi;
  const bool closed_in = closed_pi >= kThetaBandLoPi && closed_pi <= kThetaBandHiPi;
  const bool agree_ok = agree <= kThetaAgreeRel;
  const bool time_ok = r.runtime_s < kC1RuntimeS;
  r.pass = line_in && closed_in && agree_ok && time_ok;
  r.notes.push_back("|Theta|/pi line integral = " + detail::num(line_pi) + " (band [" +
                    detail::num(kThetaBandLoPi) + ", " + detail::num(kThetaBandHiPi) +
                    "]) -> " + (line_in ? "ok" : "out of band"));
  r.notes.push_back("|Theta|/pi closed form   = " + detail::num(closed_pi) + " -> " +
                    (closed_in ? "ok" : "out of band"));
  r.notes.push_back("route disagreement = " + detail::num(agree) + " (allowed " +
                    detail::num(kThetaAgreeRel) + ") -> " +
                    (agree_ok ? "ok" : "exceeded"));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s (limit " +
                    detail::num(kC1RuntimeS) + ")");
  return r;
}

// 2. Axial sweep of the accumulated phase: monotone magnitude, increments
// odd-symmetric about the focus, endpoints consistent with criterion 1.
inline CriterionResult criterion2(const Fixture& fx, double c1_line, double c1_closed) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 2;
  r.title = "axial sweep of the accumulated phase";
  const double half = 0.5 * fx.beam.wavelength;
  const auto rows = figure_sweep_axis(fx.lambda_field(), fx.sphere, fx.beam, -half, half,
                                      kSweepPoints, fx.photon_number, 8);
  r.runtime_s = sw.seconds();

  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(std::abs(rows[i].theta_line) >= std::abs(rows[i - 1].theta_line)) ||
        !(std::abs(rows[i].theta_closed) >= std::abs(rows[i - 1].theta_closed))) {
      monotone = false;
    }
  }
  const int mid = (kSweepPoints - 1) / 2;
  double sym = 0.0;
  const double span = std::abs(rows.back().theta_line);
  for (int j = 1; j <= mid; ++j) {
    const double up = rows[mid + j].theta_line - rows[mid].theta_line;
    const double dn = rows[mid].theta_line - rows[mid - j].theta_line;
    sym = std::max(sym, std::abs(up - dn) / span);
  }
  const double end_line =
      std::abs(rows.back().theta_line - c1_line) / std::abs(c1_line);
  const double end_closed =
      std::abs(rows.back().theta_closed - c1_closed) / std::abs(c1_closed);
  const bool sym_ok = sym <= kSweepSymmetryRel;
  const bool end_ok = end_line <= kSweepEndpointRel && end_closed <= kSweepEndpointRel;
  const bool time_ok = r.runtime_s < kC2RuntimeS;
  r.pass = monotone && sym_ok && end_ok && time_ok;
  r.notes.push_back(std::string("|Theta| monotone along sweep -> ") +
                    (monotone ? "ok" : "violated"));
  r.notes.push_back("increment odd-symmetry residual = " + detail::num(sym) +
                    " (allowed " + detail::num(kSweepSymmetryRel) + ") -> " +
                    (sym_ok ? "ok" : "exceeded"));
  r.notes.push_back("endpoint vs single-path run: line " + detail::num(end_line) +
                    ", closed " + detail::num(end_closed) + " (allowed " +
                    detail::num(kSweepEndpointRel) + ") -> " +
                    (end_ok ? "ok" : "exceeded"));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s (limit " +
                    detail::num(kC2RuntimeS) + ")");
  return r;
}

// 3. Quadrature vs closed form for the focus coupling across shrinking radii.
inline CriterionResult criterion3(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 3;
  r.title = "focus coupling: quadrature converges to the closed form";
  const std::vector<double> radii = {100e-9, 50e-9, 25e-9, 12.5e-9};
  std::vector<double> rel;
  for (double rr : radii) {
    DielectricSphere s(rr, fx.sphere.refractive_index, fx.sphere.density_si);
    const Vec3 quad =
        lambda_single(*fx.gaussian, s, Vec3::Zero(), fx.quad, fx.threads).value;
    const Vec3 closed = lambda_focus_closed_form(s, fx.beam);
    rel.push_back((quad - closed).norm() / closed.norm());
  }
  r.runtime_s = sw.seconds();
  bool shrink = true;
  for (std::size_t i = 1; i < rel.size(); ++i) shrink = shrink && rel[i] < rel[i - 1];
  const bool coarse_ok = rel.front() <= kFocusAgreeCoarse;
  const bool fine_ok = rel.back() <= kFocusAgreeFine;
  const bool time_ok = r.runtime_s < kC3RuntimeS;
  r.pass = shrink && coarse_ok && fine_ok && time_ok;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    r.notes.push_back("R = " + detail::num(radii[i] * 1e9) + " nm: relative gap " +
                      detail::num(rel[i]));
  }
  r.notes.push_back(std::string("gap shrinks monotonically -> ") +
                    (shrink ? "ok" : "violated"));
  r.notes.push_back("bounds: " + detail::num(kFocusAgreeCoarse) + " at 100 nm -> " +
                    (coarse_ok ? "ok" : "exceeded") + "; " + detail::num(kFocusAgreeFine) +
                    " at 12.5 nm -> " + (fine_ok ? "ok" : "exceeded"));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s (limit " +
                    detail::num(kC3RuntimeS) + ")");
  return r;
}

// 4. Real modes carry no coupling; the two traveling halves of a standing
// wave cancel pairwise.
inline CriterionResult criterion4(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 4;
  r.title = "real-mode null and pairwise cancellation";
  const double k0 = fx.beam.wavenumber();
  const double L = 10.0 * fx.beam.wavelength;
  BoxSpec box{Vec3::Zero(), Vec3(L, L, L)};
  const Vec3 kz(0.0, 0.0, k0);
  const Vec3 pol(1.0, 0.0, 0.0);
  const Vec3 q0 = 0.5 * (box.lo + box.hi) +
                  Vec3(0.1, -0.05, 0.2) * fx.beam.wavelength;

  StandingWaveMode standing(kz, pol, box, StandingWaveMode::Phase::sine);
  const Vec3 lam_sw = lambda_single(standing, fx.sphere, q0, fx.quad, fx.threads).value;
  const Vec3 gam_sw = gamma_single(standing, fx.sphere, q0, fx.quad, fx.threads).value;

  PlaneWaveMode plus(kz, pol.cast<Complex>(), box);
  PlaneWaveMode minus(-kz, pol.cast<Complex>(), box);
  const Vec3 lam_p = lambda_single(plus, fx.sphere, q0, fx.quad, fx.threads).value;
  const Vec3 lam_m = lambda_single(minus, fx.sphere, q0, fx.quad, fx.threads).value;
  r.runtime_s = sw.seconds();

  const double scale = lam_p.norm();
  const double null_lam = lam_sw.norm() / scale;
  const double null_gam = gam_sw.norm() / (scale * fx.sphere.radius);
  const double cancel = (lam_p + lam_m).norm() / scale;
  const bool lam_ok = null_lam <= kRealModeNullRel;
  const bool gam_ok = null_gam <= kRealModeNullRel;
  const bool cancel_ok = cancel <= kRealModeNullRel;
  r.pass = lam_ok && gam_ok && cancel_ok;
  r.notes.push_back("|lambda_standing| / |lambda_traveling| = " + detail::num(null_lam) +
                    " -> " + (lam_ok ? "ok" : "exceeded"));
  r.notes.push_back("|gamma_standing| / (|lambda_traveling| R) = " +
                    detail::num(null_gam) + " -> " + (gam_ok ? "ok" : "exceeded"));
  r.notes.push_back("counter-propagating pair residual = " + detail::num(cancel) +
                    " -> " + (cancel_ok ? "ok" : "exceeded") + " (allowed " +
                    detail::num(kRealModeNullRel) + ")");
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s");
  return r;
}

// 5. Thermal velocity phase shift against the published order of magnitude.
inline CriterionResult criterion5(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 5;
  r.title = "velocity-dependent optical phase at thermal speed";
  const double temperature = 300.0;
  const double v_rms = thermal_velocity_rms_si(fx.sphere.mass_si(), temperature);
  const double w_rms = thermal_angular_velocity_rms_si(fx.sphere.inertia_si(), temperature);
  const Vec3 lam0 =
      lambda_single(*fx.gaussian, fx.sphere, Vec3::Zero(), fx.quad, fx.threads).value;
  const Vec3 gam0 =
      gamma_single(*fx.gaussian, fx.sphere, Vec3::Zero(), fx.quad, fx.threads).value;
  const double dt_si = 1e-4;
  const double phase = velocity_phase_shift(Vec3(0.0, 0.0, v_rms), Vec3(w_rms, 0.0, 0.0),
                                            lam0, gam0, dt_si);
  r.runtime_s = sw.seconds();
  const double ratio = std::abs(phase) / kPhaseShiftTargetRad;
  const bool ok = ratio >= 1.0 / kPhaseShiftOrderBand && ratio <= kPhaseShiftOrderBand;
  r.pass = ok;
  r.notes.push_back("phase = " + detail::num(phase) + " rad vs target " +
                    detail::num(kPhaseShiftTargetRad) + " rad (ratio " +
                    detail::num(ratio) + ") -> " +
                    (ok ? "ok" : "outside one order of magnitude"));
  r.notes.push_back("assumption: per-axis thermal rms at T = 300 K, density " +
                    detail::num(fx.sphere.density_si) + " kg/m^3 (fused silica)");
  r.notes.push_back("assumption: rate is per photon; the published estimate carries no "
                    "photon-number factor");
  r.notes.push_back("assumption: velocity along the axis, spin along x; gamma vanishes "
                    "at the focus so the translational term dominates");
  r.notes.push_back("Delta t = " + detail::num(dt_si) + " s; v_rms = " +
                    detail::num(v_rms) + " m/s; omega_rms = " + detail::num(w_rms) +
                    " rad/s");
  return r;
}

// 6. Nonadiabatic force against the trap restoring force at thermal speed.
inline CriterionResult criterion6(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 6;
  r.title = "nonadiabatic force is small against the trap force";
  const double temperature = 300.0;
  const double v_rms = thermal_velocity_rms_si(fx.sphere.mass_si(), temperature);
  const double w_rms = thermal_angular_velocity_rms_si(fx.sphere.inertia_si(), temperature);
  const Vec3 q(0.25 * fx.beam.waist(), 0.0, 0.3 * fx.beam.rayleigh_range);
  const Vec3 v_nat = nat::velocity_from_si(v_rms) * Vec3(0.0, 0.0, 1.0);
  const Vec3 w_nat = nat::angfreq_from_si(w_rms) * Vec3(1.0, 0.0, 0.0);
  const double h = 1e-3 * fx.beam.rayleigh_range;
  const ForceReport fr =
      nonadiabatic_force(fx.lambda_field(), fx.gamma_field(), fx.omega_field_quadrature(),
                         q, v_nat, w_nat, fx.photon_number, h);
  r.runtime_s = sw.seconds();
  const double f_nonad = (fr.velocity_force + fr.rotation_force).norm();
  const double ratio = f_nonad / fr.trap_force.norm();
  const bool ok = ratio < kForceRatioMax;
  r.pass = ok;
  r.notes.push_back("|F_nonadiabatic| / |F_trap| = " + detail::num(ratio) +
                    " (allowed " + detail::num(kForceRatioMax) + ") -> " +
                    (ok ? "ok" : "exceeded"));
  r.notes.push_back("F_velocity = " + detail::num(nat::force_to_si(fr.velocity_force.norm())) +
                    " N, F_rotation = " + detail::num(nat::force_to_si(fr.rotation_force.norm())) +
                    " N, F_trap = " + detail::num(nat::force_to_si(fr.trap_force.norm())) + " N");
  r.notes.push_back("finite-difference consistency = " + detail::num(fr.fd_consistency));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s");
  return r;
}

// 7. Conservation suite: energy drift, time reversal, amplitude norm.
inline CriterionResult criterion7(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 7;
  r.title = "conservation: energy, time reversal, amplitude norm";

  PointSphereModel psm(fx.gaussian, fx.sphere);
  CouplingFieldSet fields{[&psm](const Vec3& q) { return psm.lambda(q); },
                          [&psm](const Vec3& q) { return psm.gamma(q); },
                          [&psm](const Vec3& q) { return psm.omega(q); },
                          fx.gaussian->omega()};
  EvolveParams pr;
  pr.dt = nat::time_from_si(1e-9);
  pr.steps = kC7Steps;
  pr.mass = fx.sphere.mass_nat();
  pr.inertia = fx.sphere.inertia_nat();
  pr.photon_number = fx.photon_number;
  pr.fd_step = 1e-4 * fx.beam.rayleigh_range;
  pr.record_every = 10000;

  const double temperature = 300.0;
  const double v0 = 0.3 * thermal_velocity_rms_si(fx.sphere.mass_si(), temperature);
  const double w0 = 0.3 * thermal_angular_velocity_rms_si(fx.sphere.inertia_si(),
                                                          temperature);
  MechState s0;
  s0.q = Vec3(0.1 * fx.beam.waist(), 0.0, 0.2 * fx.beam.rayleigh_range);
  const Vec3 v_nat = nat::velocity_from_si(v0) * Vec3(0.0, 0.0, 1.0);
  const Vec3 w_nat = nat::angfreq_from_si(w0) * Vec3(1.0, 0.0, 0.0);
  s0.p = pr.mass * v_nat - pr.photon_number * fields.lambda(s0.q);
  s0.J = pr.inertia * w_nat - pr.photon_number * fields.gamma(s0.q);

  const EvolveResult er = evolve_classical(s0, fields, pr);

  EvolveParams pr_rev = pr;
  pr_rev.steps = kC7ReversalSteps;
  const double rev = time_reversal_defect(s0, fields, pr_rev);

  // Amplitude norm over a driven two-mode run (unitary stepping).
  BoxSpec box{Vec3::Zero(), Vec3(0.5 * std::numbers::pi, 0.5 * std::numbers::pi,
                                 20.0 * std::numbers::pi)};
  DielectricSphere ball(0.5, fx.sphere.refractive_index);
  TravelingWaveLadder ladder({10.0, 10.1}, box, ball);
  const double delta = ladder(Vec3::Zero()).omega[1] - ladder(Vec3::Zero()).omega[0];
  const Vec3 center(0.0, 0.0, 10.0 * std::numbers::pi);
  const double amp = 0.1;
  Drive drive{[&](double t) { return center + Vec3(0.0, 0.0, amp * std::sin(delta * t)); },
              [&](double t) { return Vec3(0.0, 0.0, amp * delta * std::cos(delta * t)); },
              [](double) { return Vec3(Vec3::Zero()); }};
  Eigen::VectorXcd a0(2);
  a0 << Complex(1.0, 0.0), Complex(0.0, 0.0);
  const AmplitudeResult ar =
      evolve_mode_amplitudes([&ladder](const Vec3& q) { return ladder(q); }, drive, a0,
                             0.05, 20000, 0, 1);
  r.runtime_s = sw.seconds();

  const bool drift_ok = er.max_energy_drift_rel < kEnergyDriftRel;
  const bool rev_ok = rev < kReversalMax;
  const bool norm_ok = ar.max_norm_drift < kNormDriftMax && !ar.norm_flagged;
  const bool time_ok = r.runtime_s < kC7RuntimeS;
  r.pass = drift_ok && rev_ok && norm_ok && time_ok && er.unconverged_steps == 0;
  r.notes.push_back("energy drift over " + detail::num(double(kC7Steps)) + " steps = " +
                    detail::num(er.max_energy_drift_rel) + " (allowed " +
                    detail::num(kEnergyDriftRel) + ") -> " +
                    (drift_ok ? "ok" : "exceeded") +
                    "; relative to the mechanical energy, constant offset removed");
  r.notes.push_back("time-reversal defect over " + detail::num(double(kC7ReversalSteps)) +
                    "+" + detail::num(double(kC7ReversalSteps)) + " steps = " +
                    detail::num(rev) + " (allowed " + detail::num(kReversalMax) + ") -> " +
                    (rev_ok ? "ok" : "exceeded"));
  r.notes.push_back("amplitude norm drift = " + detail::num(ar.max_norm_drift) +
                    " (allowed " + detail::num(kNormDriftMax) + ") -> " +
                    (norm_ok ? "ok" : "exceeded"));
  r.notes.push_back("max fixed-point iterations = " +
                    detail::num(double(er.max_iterations_used)) +
                    "; steps at the gradient-noise floor = " +
                    detail::num(double(er.noise_floor_steps)) + ", diverged = " +
                    detail::num(double(er.unconverged_steps)));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s (limit " +
                    detail::num(kC7RuntimeS) + ")");
  return r;
}

// 8. Driven two-mode resonance against the two-level rotating-frame oracle.
inline CriterionResult criterion8(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 8;
  r.title = "two-mode resonance vs two-level oracle";
  BoxSpec box{Vec3::Zero(), Vec3(0.5 * std::numbers::pi, 0.5 * std::numbers::pi,
                                 20.0 * std::numbers::pi)};
  DielectricSphere ball(0.5, fx.sphere.refractive_index);
  TravelingWaveLadder ladder({10.0, 10.1}, box, ball);
  const auto ms0 = ladder(Vec3::Zero());
  const double delta_w = ms0.omega[1] - ms0.omega[0];
  const Vec3 center(0.0, 0.0, 10.0 * std::numbers::pi);
  const double amp = 0.1;
  const double kappa_res = ladder.coupling_rate(0, 1, amp * delta_w);
  const double t_star = std::numbers::pi / (2.0 * kappa_res);
  const double dt = 0.05;
  const long steps = static_cast<long>(std::ceil(1.05 * t_star / dt));

  auto run = [&](double drive_omega) {
    Drive drive{
        [&, drive_omega](double t) {
          return center + Vec3(0.0, 0.0, amp * std::sin(drive_omega * t));
        },
        [&, drive_omega](double t) {
          return Vec3(0.0, 0.0, amp * drive_omega * std::cos(drive_omega * t));
        },
        [](double) { return Vec3(Vec3::Zero()); }};
    Eigen::VectorXcd a0(2);
    a0 << Complex(1.0, 0.0), Complex(0.0, 0.0);
    return evolve_mode_amplitudes([&ladder](const Vec3& q) { return ladder(q); }, drive,
                                  a0, dt, steps, 0, 1);
  };

  const AmplitudeResult on_res = run(delta_w);
  const double drive_det = delta_w + 10.0 * kappa_res;
  const AmplitudeResult detuned = run(drive_det);
  r.runtime_s = sw.seconds();

  // Oracle: peak = kappa^2 / (kappa^2 + (delta/2)^2) with kappa taken at the
  // actual drive frequency (velocity amplitude A * Omega).
  const double oracle_res = 1.0;
  const double kappa_det = ladder.coupling_rate(0, 1, amp * drive_det);
  const double det = drive_det - delta_w;
  const double oracle_det =
      kappa_det * kappa_det / (kappa_det * kappa_det + 0.25 * det * det);

  const double err_res = std::abs(on_res.peak_transfer - oracle_res) / oracle_res;
  const double err_det = std::abs(detuned.peak_transfer - oracle_det) / oracle_det;
  const double contrast = on_res.peak_transfer / detuned.peak_transfer;
  const bool res_ok = err_res <= kResonanceOracleRel;
  const bool det_ok = err_det <= kResonanceOracleRel;
  const bool contrast_ok = contrast >= kResonanceContrastMin;
  const bool norm_ok = on_res.max_norm_drift < kNormDriftMax &&
                       detuned.max_norm_drift < kNormDriftMax;
  r.pass = res_ok && det_ok && contrast_ok && norm_ok;
  r.notes.push_back("peak transfer on resonance = " + detail::num(on_res.peak_transfer) +
                    " vs oracle 1.0 (relative " + detail::num(err_res) + ") -> " +
                    (res_ok ? "ok" : "exceeded"));
  r.notes.push_back("peak transfer detuned by 10 kappa = " +
                    detail::num(detuned.peak_transfer) + " vs oracle " +
                    detail::num(oracle_det) + " (relative " + detail::num(err_det) +
                    ") -> " + (det_ok ? "ok" : "exceeded"));
  r.notes.push_back("contrast = " + detail::num(contrast) + " (required >= " +
                    detail::num(kResonanceContrastMin) + ") -> " +
                    (contrast_ok ? "ok" : "insufficient"));
  r.notes.push_back("coupling rate = " + detail::num(kappa_res) + ", transfer time = " +
                    detail::num(t_star) + ", norm drift ok -> " +
                    (norm_ok ? "yes" : "no"));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s");
  return r;
}

// 9. Mode hygiene: Gram matrices, gauge residuals, quadrature stability.
inline CriterionResult criterion9(const Fixture& fx) {
  detail::Stopwatch sw;
  CriterionResult r;
  r.index = 9;
  r.title = "mode hygiene: Gram, gauge, quadrature stability";
  const double L = 10.0 * fx.beam.wavelength;
  BoxSpec box{Vec3::Zero(), Vec3(L, L, L)};
  const double ku = std::numbers::pi / L;

  std::vector<ModePtr> family;
  family.push_back(std::make_shared<StandingWaveMode>(
      Vec3(0.0, 0.0, 20.0 * ku), Vec3(1.0, 0.0, 0.0), box,
      StandingWaveMode::Phase::sine));
  family.push_back(std::make_shared<StandingWaveMode>(
      Vec3(0.0, 0.0, 22.0 * ku), Vec3(1.0, 0.0, 0.0), box,
      StandingWaveMode::Phase::sine));
  family.push_back(std::make_shared<StandingWaveMode>(
      Vec3(0.0, 0.0, 20.0 * ku), Vec3(0.0, 1.0, 0.0), box,
      StandingWaveMode::Phase::cosine));
  // Plane-wave wavenumbers avoid +-20 ku x and +-22 ku y: a traveling wave
  // overlaps a standing wave of the same wavenumber and polarization.
  family.push_back(std::make_shared<PlaneWaveMode>(
      Vec3(0.0, 0.0, 12.0 * 2.0 * ku), CVec3(1.0, 0.0, 0.0), box));
  family.push_back(std::make_shared<PlaneWaveMode>(
      Vec3(0.0, 0.0, -11.0 * 2.0 * ku), CVec3(0.0, 1.0, 0.0), box));

  const Eigen::MatrixXcd gram = check_orthonormality(family, nullptr, Vec3::Zero());
  const double gram_dev =
      (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();

  double gauge_worst = 0.0;
  const Vec3 qg = 0.5 * (box.lo + box.hi);
  for (const auto& m : family) {
    gauge_worst = std::max(
        gauge_worst, check_gauge(*m, nullptr, qg, 2.0 * fx.beam.wavelength).max_residual);
    gauge_worst = std::max(
        gauge_worst,
        check_gauge(*m, &fx.sphere, qg, 2.0 * fx.beam.wavelength).max_residual);
  }

  // Order-doubling stability on every coupling integral family the suite
  // uses: the focused mode with itself, and a box pair.
  double doubling = 0.0;
  const Vec3 qq(0.25 * fx.beam.waist(), 0.0, 0.3 * fx.beam.rayleigh_range);
  const auto self = complex_coupling_coeffs(*fx.gaussian, *fx.gaussian, fx.sphere, qq,
                                            fx.quad, fx.threads, true);
  doubling = std::max(doubling, self.rel_error);
  const auto pair = complex_coupling_coeffs(*family[3], *family[4], fx.sphere, qg,
                                            fx.quad, fx.threads, true);
  doubling = std::max(doubling, pair.rel_error);
  r.runtime_s = sw.seconds();

  const bool gram_ok = gram_dev < kGramMax;
  const bool gauge_ok = gauge_worst < kGaugeMax;
  const bool doubling_ok = doubling < kOrderDoublingMax;
  r.pass = gram_ok && gauge_ok && doubling_ok;
  r.notes.push_back("Gram deviation (5 box modes, no ball) = " + detail::num(gram_dev) +
                    " (allowed " + detail::num(kGramMax) + ") -> " +
                    (gram_ok ? "ok" : "exceeded"));
  r.notes.push_back("gauge residual, exactly-transverse family, with and without ball = " +
                    detail::num(gauge_worst) + " (allowed " + detail::num(kGaugeMax) +
                    ") -> " + (gauge_ok ? "ok" : "exceeded"));
  r.notes.push_back("order-doubling relative change on coupling integrals = " +
                    detail::num(doubling) + " (allowed " + detail::num(kOrderDoublingMax) +
                    ") -> " + (doubling_ok ? "ok" : "exceeded"));
  r.notes.push_back("runtime " + detail::num(r.runtime_s) + " s");
  return r;
}

inline std::vector<CriterionResult> run_reproduction_suite(const RunConfig& cfg,
                                                           int threads) {
  const Fixture fx = Fixture::from_config(cfg, threads);
  std::vector<CriterionResult> out;
  double c1_line = 0.0, c1_closed = 0.0;
  out.push_back(criterion1(fx, &c1_line, &c1_closed));
  out.push_back(criterion2(fx, c1_line, c1_closed));
  out.push_back(criterion3(fx));
  out.push_back(criterion4(fx));
  out.push_back(criterion5(fx));
  out.push_back(criterion6(fx));
  out.push_back(criterion7(fx));
  out.push_back(criterion8(fx));
  out.push_back(criterion9(fx));
  return out;
}

inline void print_reproduction(std::ostream& os,
                               const std::vector<CriterionResult>& results) {
  int passed = 0;
  for (const auto& c : results) {
    os << "[CRITERION " << c.index << "] " << (c.pass ? "PASS" : "FAIL") << "  "
       << c.title << "\n";
    for (const auto& n : c.notes) os << "    - " << n << "\n";
    if (c.pass) ++passed;
  }
  os << passed << "/" << results.size() << " criteria passed\n";
}

} // namespace optomech::repro

#endif
