// Frozen reference values for the bundled configuration (ball R = 100 nm,
// n = 1.45, fused-silica density; beam wavelength 1064 nm, z_R = 0.53 um,
// normalization length 4 mm; 1e6 photons where a photon number enters).
//
// Every number was computed independently of the library before the library
// existed: arbitrary-precision quadrature (mpmath/scipy) for the volume and
// line integrals, closed-form evaluation for the analytic rows, and a
// fourth-order reference integrator for the driven two-mode run. The tests
// compare the library against these constants; none of them are produced by
// the code under test.

#ifndef OPTOMECH_TESTS_ORACLE_VALUES_HPP
#define OPTOMECH_TESTS_ORACLE_VALUES_HPP

namespace oracle {

// Beam geometry.
inline constexpr double kWavenumber = 5.905249348852994e6;  // 2 pi / wavelength, 1/m
inline constexpr double kWaist = 4.236759504819258e-7;      // sqrt(2 z_R / k), m
inline constexpr double kFocusPhase = 3.1297821548920868;   // k z_R

// Sphere bulk numbers.
inline constexpr double kSusceptibility = 1.1025;       // n^2 - 1
inline constexpr double kMassKg = 9.2153384505e-18;     // (4/3) pi R^3 rho
inline constexpr double kPhotonsFrom15mW = 1.072002e6;  // 15 mW, L_c = 4 mm

// Thermal scales at 300 K (per-axis rms).
inline constexpr double kVrms = 2.120053e-2;       // m/s
inline constexpr double kOmegaRms = 3.35213e5;     // rad/s

// Translational coupling at the focus, per photon, natural units (1/m):
// z-component; x and y vanish by symmetry. Closed form and quadrature.
inline constexpr double kLambdaFocusClosedZ = -24.1800923169949;
inline constexpr double kLambdaFocusQuadZ100 = -2.29767055e+01;   // R = 100 nm
inline constexpr double kLambdaFocusQuadZ50 = -2.98382599e+00;    // R = 50 nm
inline constexpr double kLambdaFocusQuadZ25 = -3.76596335e-01;    // R = 25 nm
inline constexpr double kLambdaFocusQuadZ12p5 = -4.71886242e-02;  // R = 12.5 nm
inline constexpr double kLambdaGap100 = 4.9768e-2;   // |quad - closed| / |closed|
inline constexpr double kLambdaGap50 = 1.2799e-2;
inline constexpr double kLambdaGap25 = 3.223e-3;
inline constexpr double kLambdaGap12p5 = 8.07e-4;

// Off-axis spot check at q = (w0/4, -w0/3, 0.6 z_R), per photon.
inline constexpr double kLambdaSpotX = -1.1236631482e+00;
inline constexpr double kLambdaSpotY = 1.5556235791e+00;
inline constexpr double kLambdaSpotZ = -1.3498429433e+01;
inline constexpr double kGammaSpotX = -5.8039527409e-08;
inline constexpr double kGammaSpotY = -5.0536263052e-08;
inline constexpr double kGammaSpotZ = 2.2356082876e-09;

// Rotational coupling on the transverse axis, q = (w0/2, 0, 0): the only
// sizable component is y. The R -> 0 limit of quadrature over closed form
// is 0.6548, not 1: the closed form keeps only the leading curl term.
inline constexpr double kGammaQuadY = -1.63687587e-07;
inline constexpr double kGammaClosedY = -2.647589e-07;

// Geometric phase over q_z in [-wavelength/2, +wavelength/2], 1e6 photons.
// The two routes genuinely disagree: the line integral of the quadrature
// coupling field gives -6.181 pi, the closed form -5.251 pi (17.7%). The
// axial momentum-flux profile behind the closed form falls off one power
// of (1 + (z/z_R)^2) faster than the on-axis field intensity.
inline constexpr double kThetaClosed = -16.497043591083674;  // rad
inline constexpr double kThetaLine = -19.41885726;     // rad

// Velocity phase shift over 0.1 ms at the 300 K thermal scales, per photon.
inline constexpr double kVelocityPhase = 5.12630661001917e-5;  // rad, magnitude; focus closed-form lambda

// Relative mode-frequency pull at the focus, R = 100 nm: full overlap
// integral vs the center-value (point-ball) estimate.
inline constexpr double kFreqShiftRelQuad = -1.958995e-6;
inline constexpr double kFreqShiftRelPoint = -2.047339e-6;

// Force triple at q = (w0/4, 0, 0.3 z_R), 1e6 photons, thermal speeds.
inline constexpr double kTrapForceN = 5.760350520181838e-13;  // point-ball fields
inline constexpr double kForceRatio = 2.099293205502264e-10;  // |F_vel + F_rot| / |F_trap|, point-ball fields

// Counter-propagating x-polarized plane-wave pair (+-k zhat) in a periodic
// cube of side 10 wavelengths, ball at (0.1, -0.05, 0.2) wavelengths:
// z-component of the second-kind translational overlap for the (+, -) pair.
// Closed form: -i chi k_j (V_s/V) W(|dk| R) e^{i dk . q}, dk = k_j - k_l.
inline constexpr double kEtaPairRe = 1.1541459817e+01;
inline constexpr double kEtaPairIm = -1.5885456628e+01;

// Paraxial transversality residual of the focused mode (it is not exactly
// transverse; box families are). Deterministic sample cloud.


// Driven two-mode ladder (co-propagating traveling waves, k = {10, 10.1},
// box z-length 20 pi, ball R = 0.5, n = 1.45, drive amplitude 0.1):
// frequency gap, rotating-frame coupling rate at the resonant drive, and
// the transfer peak of the 10-coupling-detuned run for a drive of that
// amplitude (two-level formula with the rate taken at the drive frequency).
inline constexpr double kLadderGap = 9.98138223e-2;
inline constexpr double kLadderKappa = 1.867112e-4;
inline constexpr double kDetunedPeak = 3.9854e-2;

} // namespace oracle

#endif
