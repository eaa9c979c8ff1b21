#ifndef OPTOMECH_MODES_HPP
#define OPTOMECH_MODES_HPP

#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "optomech/units.hpp"

namespace optomech {

using Complex = std::complex<double>;

// Rectangular normalization box for the discrete families.
struct BoxSpec {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
  double volume() const { return (hi - lo).prod(); }
};

// One normal mode of the transverse field in the empty-cavity basis:
// value/curl/divergence are analytic everywhere, omega is the vacuum
// dispersion c|k| (c = 1). Normalization: integral of |f|^2 over the
// mode's normalization volume equals 1.
class ModeField {
 public:
  virtual ~ModeField() = default;
  virtual CVec3 value(const Vec3& r) const = 0;
  virtual CVec3 curl(const Vec3& r) const = 0;
  virtual Complex divergence(const Vec3& r) const = 0;
  virtual double omega() const = 0;  // natural units, 1/m
  virtual bool is_real() const = 0;  // true if value() is real everywhere
  // Box families report their normalization box; unbounded families none.
  virtual std::optional<BoxSpec> box() const { return std::nullopt; }
};

using ModePtr = std::shared_ptr<const ModeField>;

// ---------------------------------------------------------------------------
// Focused fundamental beam in the paraxial envelope description, x-polarized,
// propagating along +z, focus at the origin:
//   f = [u e_x + (i/k) du/dx e_z] e^{ikz} / sqrt(L_c)
//   u = sqrt(2/pi) (1/w0) s exp(-(x^2+y^2) s / w0^2),  s = 1/(1 + i z/z_R)
// which is the standard envelope with w(z)^2 = w0^2 (1 + (z/z_R)^2),
// w0^2 = 2 z_R / k, Gouy phase and wavefront curvature folded into s.
// The transverse-plane integral of |u|^2 is 1 at every z, so |f|^2
// integrates to 1 over one cavity length.
class GaussianParaxialMode final : public ModeField {
 public:
  explicit GaussianParaxialMode(const BeamParams& beam)
      : beam_(beam),
        k_(beam.wavenumber()),
        zr_(beam.rayleigh_range),
        w0_(beam.waist()),
        lc_(beam.cavity_length) {
    if (!(beam.wavelength > 0) || !(zr_ > 0) || !(lc_ > 0)) {
      throw std::invalid_argument("beam parameters must be positive");
    }
  }

  struct Envelope {
    Complex u, ux, uy, uz, uxx, uxy, uxz;
  };

  Envelope envelope(const Vec3& r) const {
    const double w02 = w0_ * w0_;
    const Complex s = 1.0 / Complex(1.0, r.z() / zr_);
    const double rho2 = r.x() * r.x() + r.y() * r.y();
    const double norm = std::sqrt(2.0 / std::numbers::pi) / w0_;
    Envelope e;
    e.u = norm * s * std::exp(-rho2 * s / w02);
    e.ux = -2.0 * r.x() * s / w02 * e.u;
    e.uy = -2.0 * r.y() * s / w02 * e.u;
    const Complex sp = Complex(0.0, -1.0 / zr_) * s * s;  // ds/dz
    e.uz = sp * (1.0 / s - rho2 / w02) * e.u;
    e.uxx = (-2.0 * s / w02 + 4.0 * r.x() * r.x() * s * s / (w02 * w02)) * e.u;
    e.uxy = 4.0 * r.x() * r.y() * s * s / (w02 * w02) * e.u;
    e.uxz = -2.0 * r.x() / w02 * (sp * e.u + s * e.uz);
    return e;
  }

  CVec3 value(const Vec3& r) const override {
    const Envelope e = envelope(r);
    const Complex ph = std::exp(Complex(0.0, k_ * r.z())) / std::sqrt(lc_);
    return CVec3(e.u * ph, Complex(0.0), Complex(0.0, 1.0 / k_) * e.ux * ph);
  }

  CVec3 curl(const Vec3& r) const override {
    const Envelope e = envelope(r);
    const Complex ph = std::exp(Complex(0.0, k_ * r.z())) / std::sqrt(lc_);
    const Complex i(0.0, 1.0);
    return CVec3((i / k_) * e.uxy * ph,
                 (e.uz + i * k_ * e.u - (i / k_) * e.uxx) * ph,
                 -e.uy * ph);
  }

  // Exact divergence of the two-component ansatz: the e_x and phase terms
  // cancel, leaving the paraxial residual (i/k) d^2u/dxdz e^{ikz}.
  Complex divergence(const Vec3& r) const override {
    const Envelope e = envelope(r);
    const Complex ph = std::exp(Complex(0.0, k_ * r.z())) / std::sqrt(lc_);
    return Complex(0.0, 1.0 / k_) * e.uxz * ph;
  }

  double omega() const override { return k_; }
  bool is_real() const override { return false; }
  const BeamParams& beam() const { return beam_; }

 private:
  BeamParams beam_;
  double k_, zr_, w0_, lc_;
};

// ---------------------------------------------------------------------------
// Traveling plane wave over a periodic box: f = pol e^{ik.r} / sqrt(V).
// k must be a reciprocal vector of the box and pol transverse to k.
class PlaneWaveMode final : public ModeField {
 public:
  PlaneWaveMode(const Vec3& k, const CVec3& pol, const BoxSpec& box)
      : k_(k), pol_(pol), box_(box), inv_sqrt_v_(1.0 / std::sqrt(box.volume())) {
    check_reciprocal(k, box);
    if (std::abs(pol.dot(k.cast<Complex>())) > 1e-12 * k.norm() * pol.norm()) {
      throw std::invalid_argument("plane-wave polarization must be transverse");
    }
    const double n2 = std::sqrt(pol.squaredNorm());
    pol_ /= n2;  // unit polarization → unit norm over the box
  }

  CVec3 value(const Vec3& r) const override {
    return pol_ * (phase(r) * inv_sqrt_v_);
  }
  CVec3 curl(const Vec3& r) const override {
    const Complex i(0.0, 1.0);
    return (i * ccross(k_.cast<Complex>(), pol_)) * (phase(r) * inv_sqrt_v_);
  }
  Complex divergence(const Vec3&) const override { return Complex(0.0); }
  double omega() const override { return k_.norm(); }
  bool is_real() const override { return false; }
  std::optional<BoxSpec> box() const override { return box_; }
  const Vec3& wavevector() const { return k_; }

  static void check_reciprocal(const Vec3& k, const BoxSpec& box) {
    const Vec3 L = box.hi - box.lo;
    for (int a = 0; a < 3; ++a) {
      const double m = k[a] * L[a] / (2.0 * std::numbers::pi);
      if (std::abs(m - std::round(m)) > 1e-9) {
        throw std::invalid_argument("plane-wave k must fit the periodic box");
      }
    }
  }

 private:
  Complex phase(const Vec3& r) const {
    return std::exp(Complex(0.0, k_.dot(r)));
  }
  Vec3 k_;
  CVec3 pol_;
  BoxSpec box_;
  double inv_sqrt_v_;
};

// ---------------------------------------------------------------------------
// Real standing wave over a box: f = sqrt(2/V) trig(k.r) pol with
// trig = sin or cos; k components are integer multiples of pi/L so that
// trig^2 averages to 1/2 over the box.
class StandingWaveMode final : public ModeField {
 public:
  enum class Phase { sine, cosine };

  StandingWaveMode(const Vec3& k, const Vec3& pol, const BoxSpec& box,
                   Phase phase = Phase::sine)
      : k_(k), pol_(pol.normalized()), box_(box), phase_(phase),
        amp_(std::sqrt(2.0 / box.volume())) {
    const Vec3 L = box.hi - box.lo;
    for (int a = 0; a < 3; ++a) {
      const double m = k[a] * L[a] / std::numbers::pi;
      if (std::abs(m - std::round(m)) > 1e-9) {
        throw std::invalid_argument("standing-wave k must fit the box");
      }
    }
    if (std::abs(pol_.dot(k)) > 1e-12 * k.norm()) {
      throw std::invalid_argument("standing-wave polarization must be transverse");
    }
  }

  CVec3 value(const Vec3& r) const override {
    const double ph = k_.dot(r - box_.lo);
    const double t = (phase_ == Phase::sine) ? std::sin(ph) : std::cos(ph);
    return (amp_ * t) * pol_.cast<Complex>();
  }
  CVec3 curl(const Vec3& r) const override {
    const double ph = k_.dot(r - box_.lo);
    const double dt = (phase_ == Phase::sine) ? std::cos(ph) : -std::sin(ph);
    return (amp_ * dt) * k_.cross(pol_).cast<Complex>();
  }
  Complex divergence(const Vec3&) const override { return Complex(0.0); }
  double omega() const override { return k_.norm(); }
  bool is_real() const override { return true; }
  std::optional<BoxSpec> box() const override { return box_; }
  const Vec3& wavevector() const { return k_; }

 private:
  Vec3 k_;
  Vec3 pol_;
  BoxSpec box_;
  Phase phase_;
  double amp_;
};

// ---------------------------------------------------------------------------
// Linear combination sum_i c_i f_i of equal-frequency base modes.
class SuperposedMode final : public ModeField {
 public:
  SuperposedMode(std::vector<ModePtr> base, std::vector<Complex> coeff)
      : base_(std::move(base)), coeff_(std::move(coeff)) {
    if (base_.empty() || base_.size() != coeff_.size()) {
      throw std::invalid_argument("superposition needs matching base/coefficient counts");
    }
    omega_ = base_.front()->omega();
    for (const auto& m : base_) {
      if (std::abs(m->omega() - omega_) > 1e-9 * omega_) {
        throw std::invalid_argument("superposed base modes must share a frequency");
      }
    }
  }

  CVec3 value(const Vec3& r) const override { return combine(&ModeField::value, r); }
  CVec3 curl(const Vec3& r) const override { return combine(&ModeField::curl, r); }
  Complex divergence(const Vec3& r) const override {
    Complex acc(0.0);
    for (std::size_t i = 0; i < base_.size(); ++i) {
      acc += coeff_[i] * base_[i]->divergence(r);
    }
    return acc;
  }
  double omega() const override { return omega_; }
  bool is_real() const override { return false; }
  std::optional<BoxSpec> box() const override { return base_.front()->box(); }

 private:
  template <typename Fn>
  CVec3 combine(Fn fn, const Vec3& r) const {
    CVec3 acc = CVec3::Zero();
    for (std::size_t i = 0; i < base_.size(); ++i) {
      acc += coeff_[i] * ((*base_[i]).*fn)(r);
    }
    return acc;
  }
  std::vector<ModePtr> base_;
  std::vector<Complex> coeff_;
  double omega_;
};

// Build complex modes from a real degenerate pair (or larger set) by a
// unitary mixing matrix, e.g. U = [[1, i], [1, -i]] / sqrt(2) turns
// {sin, cos} standing waves into counter-propagating traveling waves.
inline std::vector<ModePtr> complex_from_real(
    const std::vector<ModePtr>& real_modes,
    const Eigen::MatrixXcd& u) {
  const auto n = static_cast<Eigen::Index>(real_modes.size());
  if (u.rows() != n || u.cols() != n) {
    throw std::invalid_argument("mixing matrix shape must match the mode count");
  }
  const Eigen::MatrixXcd gram = u * u.adjoint();
  if ((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("mixing matrix must be unitary");
  }
  for (const auto& m : real_modes) {
    if (!m->is_real()) throw std::invalid_argument("base modes must be real");
  }
  std::vector<ModePtr> out;
  out.reserve(real_modes.size());
  for (Eigen::Index row = 0; row < n; ++row) {
    std::vector<Complex> coeff(real_modes.size());
    for (Eigen::Index col = 0; col < n; ++col) coeff[col] = u(row, col);
    out.push_back(std::make_shared<SuperposedMode>(real_modes, coeff));
  }
  return out;
}

} // namespace optomech

#endif
