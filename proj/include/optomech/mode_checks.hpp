#ifndef OPTOMECH_MODE_CHECKS_HPP
#define OPTOMECH_MODE_CHECKS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "optomech/modes.hpp"
#include "optomech/quadrature.hpp"
#include "optomech/units.hpp"

namespace optomech {

// Central finite differences against which the analytic derivatives of a
// mode are validated. h is an absolute step in meters.
inline CVec3 fd_curl(const ModeField& m, const Vec3& r, double h) {
  auto d = [&](int axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = h;
    return CVec3((m.value(r + e) - m.value(r - e)) / (2.0 * h));
  };
  const CVec3 dx = d(0), dy = d(1), dz = d(2);
  return CVec3(dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0]);
}

inline Complex fd_divergence(const ModeField& m, const Vec3& r, double h) {
  Complex acc(0.0);
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = h;
    acc += (m.value(r + e)[axis] - m.value(r - e)[axis]) / (2.0 * h);
  }
  return acc;
}

// Deterministic sample cloud: golden-angle spiral points on a few radial
// shells around `center`, up to `radius`. Used by the gauge check.
inline std::vector<Vec3> sample_cloud(const Vec3& center, double radius, int count) {
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double t = (i + 0.5) / count;
    const double r = radius * std::cbrt(t);  // uniform in volume
    const double ct = 1.0 - 2.0 * t;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double ph = golden * i;
    pts.emplace_back(center + Vec3(r * st * std::cos(ph), r * st * std::sin(ph), r * ct));
  }
  return pts;
}

struct GaugeReport {
  double max_residual = 0.0;  // max |div(eps f)| / (k max|f|) over samples
  Vec3 worst_point = Vec3::Zero();
};

// Generalized-transversality residual of a mode in the presence of the ball
// at q: away from the material surface the weighted divergence reduces to
// eps * div f, so points in a thin band around |r - q| = R are skipped and
// the sharp surface term is never sampled.
inline GaugeReport check_gauge(const ModeField& mode, const DielectricSphere* sphere,
                               const Vec3& q, double sampling_radius, int samples = 512) {
  const auto pts = sample_cloud(q, sampling_radius, samples);
  double fmax = 0.0;
  for (const auto& r : pts) fmax = std::max(fmax, mode.value(r).norm());
  if (fmax == 0.0) throw std::invalid_argument("mode vanishes on the sample cloud");
  const double k = mode.omega();

  GaugeReport rep;
  for (const auto& r : pts) {
    double eps = 1.0;
    if (sphere != nullptr) {
      const double d = (r - q).norm();
      if (std::abs(d - sphere->radius) < 0.02 * sphere->radius) continue;  // surface band
      eps = permittivity(*sphere, q, r);
    }
    const double res = eps * std::abs(mode.divergence(r)) / (k * fmax);
    if (res > rep.max_residual) {
      rep.max_residual = res;
      rep.worst_point = r;
    }
  }
  return rep;
}

// Gram matrix of the weighted inner product int eps conj(u_k).u_j d3r for a
// family sharing one normalization box. The vacuum part uses the uniform
// midpoint grid (exact for the box families); the material correction adds
// (n^2 - 1) times the ball integral.
inline Eigen::MatrixXcd check_orthonormality(const std::vector<ModePtr>& modes,
                                             const DielectricSphere* sphere,
                                             const Vec3& q,
                                             const QuadratureSpec& quad = {},
                                             int grid_per_axis = 48) {
  if (modes.empty()) throw std::invalid_argument("empty mode list");
  auto box0 = modes.front()->box();
  if (!box0) throw std::invalid_argument("orthonormality check needs box modes");
  for (const auto& m : modes) {
    auto b = m->box();
    if (!b || (b->lo - box0->lo).norm() > 0 || (b->hi - box0->hi).norm() > 0) {
      throw std::invalid_argument("all modes must share one normalization box");
    }
  }
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      auto f = [&](const Vec3& r) -> Complex {
        // Eigen's dot() already conjugates its left operand.
        return modes[a]->value(r).dot(modes[b]->value(r));
      };
      Complex vac = integrate_box_midpoint<Complex>(box0->lo, box0->hi, grid_per_axis,
                                                    grid_per_axis, grid_per_axis, f,
                                                    Complex(0.0));
      Complex corr(0.0);
      if (sphere != nullptr) {
        SphereRule rule(sphere->radius, quad);
        corr = sphere->susceptibility() *
               integrate_ball<Complex>(rule, q, f, Complex(0.0));
      }
      gram(a, b) = vac + corr;
      gram(b, a) = std::conj(gram(a, b));
    }
  }
  return gram;
}

// First-order frequency of a mode with the ball at q:
//   omega(q) = omega0 [1 - (1/2) int_ball (eps - 1) |f|^2 d3r]
// valid for k R below order one. Natural units (omega in 1/m).
inline double mode_frequency_shift(const ModeField& mode, const DielectricSphere& sphere,
                                   const Vec3& q, const QuadratureSpec& quad = {},
                                   int threads = 1) {
  SphereRule rule(sphere.radius, quad);
  auto density = [&](const Vec3& r) { return mode.value(r).squaredNorm(); };
  const double overlap =
      integrate_ball<double>(rule, q, density, 0.0, threads);
  return mode.omega() * (1.0 - 0.5 * sphere.susceptibility() * overlap);
}

// Gradient of omega(q) by moving the integration domain: nodes ride rigidly
// with q, so central differencing the shift integral equals differentiating
// the integrand under the integral.
inline Vec3 mode_frequency_gradient(const ModeField& mode, const DielectricSphere& sphere,
                                    const Vec3& q, double h,
                                    const QuadratureSpec& quad = {}, int threads = 1) {
  Vec3 g;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = h;
    g[axis] = (mode_frequency_shift(mode, sphere, q + e, quad, threads) -
               mode_frequency_shift(mode, sphere, q - e, quad, threads)) /
              (2.0 * h);
  }
  return g;
}

} // namespace optomech

#endif
