#ifndef OPTOMECH_QUADRATURE_HPP
#define OPTOMECH_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "optomech/units.hpp"

namespace optomech {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
// Deterministic to the last bit for a given n.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        // recurrence for P_n(xi) and P'_n(xi)
        double p0 = 1.0, p1 = xi;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / pp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[i] = -xi;
      x[n - 1 - i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
      w[n - 1 - i] = w[i];
    }
    if (n % 2 == 1) x[n / 2] = 0.0;  // clean up the central node
  }
};

enum class SphereScheme {
  // Gauss-Legendre in r, cos(theta) and phi.
  tensor_gl,
  // Gauss-Legendre radial layers crossed with an angular design:
  // GL in cos(theta) x uniform (trapezoidal) azimuthal ring, which is
  // spectrally exact in the periodic angle. Default.
  layered_gl,
};

struct QuadratureSpec {
  SphereScheme scheme = SphereScheme::layered_gl;
  int radial_order = 24;
  int polar_order = 48;
  int azimuthal_order = 96;
  double target_rel_tol = 1e-8;

  QuadratureSpec doubled() const {
    QuadratureSpec d = *this;
    d.radial_order *= 2;
    d.polar_order *= 2;
    d.azimuthal_order *= 2;
    return d;
  }
};

// Quadrature nodes over the ball |r| <= R, offsets relative to the center.
// Nodes are grouped in radial shells; summing shell partials in shell order
// gives a reduction that is bit-stable for any thread count.
struct SphereRule {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int shells = 0;          // number of radial layers
  std::size_t shell_size = 0;  // nodes per layer

  SphereRule(double radius, const QuadratureSpec& spec) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    GaussLegendre glr(spec.radial_order);
    GaussLegendre glt(spec.polar_order);
    shells = spec.radial_order;
    shell_size = static_cast<std::size_t>(spec.polar_order) * spec.azimuthal_order;
    nodes.reserve(shells * shell_size);
    weights.reserve(shells * shell_size);

    std::vector<double> phi(spec.azimuthal_order), wphi(spec.azimuthal_order);
    if (spec.scheme == SphereScheme::layered_gl) {
      for (int a = 0; a < spec.azimuthal_order; ++a) {
        phi[a] = 2.0 * std::numbers::pi * a / spec.azimuthal_order;
        wphi[a] = 2.0 * std::numbers::pi / spec.azimuthal_order;
      }
    } else {
      GaussLegendre glp(spec.azimuthal_order);
      for (int a = 0; a < spec.azimuthal_order; ++a) {
        phi[a] = std::numbers::pi * (glp.x[a] + 1.0);
        wphi[a] = std::numbers::pi * glp.w[a];
      }
    }

    for (int i = 0; i < spec.radial_order; ++i) {
      const double r = 0.5 * radius * (glr.x[i] + 1.0);
      const double wr = 0.5 * radius * glr.w[i] * r * r;
      for (int t = 0; t < spec.polar_order; ++t) {
        const double ct = glt.x[t];
        const double st = std::sqrt(1.0 - ct * ct);
        for (int a = 0; a < spec.azimuthal_order; ++a) {
          nodes.emplace_back(r * st * std::cos(phi[a]), r * st * std::sin(phi[a]), r * ct);
          weights.push_back(wr * glt.w[t] * wphi[a]);
        }
      }
    }
  }
};

namespace detail {

// Sum f(center + node) * weight over one shell, sequentially.
template <typename T, typename F>
T shell_sum(const SphereRule& rule, const Vec3& center, const F& f, int shell, T zero) {
  T acc = zero;
  const std::size_t begin = static_cast<std::size_t>(shell) * rule.shell_size;
  const std::size_t end = begin + rule.shell_size;
  for (std::size_t i = begin; i < end; ++i) {
    acc += f(Vec3(center + rule.nodes[i])) * rule.weights[i];
  }
  return acc;
}

} // namespace detail

// Integral of f over the ball of the given rule centered at `center`.
// T must support T + T, T * double and copy; `zero` supplies the identity.
// With threads > 1 the shells are processed concurrently but combined in
// shell order, so the result does not depend on the thread count.
template <typename T, typename F>
T integrate_ball(const SphereRule& rule, const Vec3& center, const F& f, T zero,
                 int threads = 1) {
  std::vector<T> partial(rule.shells, zero);
  if (threads <= 1) {
    for (int s = 0; s < rule.shells; ++s) {
      partial[s] = detail::shell_sum(rule, center, f, s, zero);
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    // static stride partition keeps each shell's internal order fixed
    const int nt = std::min<int>(threads, rule.shells);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
      pool.emplace_back([&, t]() {
        for (int s = t; s < rule.shells; s += nt) {
          partial[s] = detail::shell_sum(rule, center, f, s, zero);
        }
      });
    }
    for (auto& th : pool) th.join();
    (void)next;
  }
  T acc = zero;
  for (int s = 0; s < rule.shells; ++s) acc += partial[s];
  return acc;
}

// Convenience: integrate with an order-doubling error estimate.
template <typename T, typename NormFn, typename F>
std::pair<T, double> integrate_ball_checked(double radius, const Vec3& center,
                                            const QuadratureSpec& spec, const F& f,
                                            T zero, NormFn norm, int threads = 1) {
  SphereRule coarse(radius, spec);
  SphereRule fine(radius, spec.doubled());
  T a = integrate_ball<T>(coarse, center, f, zero, threads);
  T b = integrate_ball<T>(fine, center, f, zero, threads);
  const double nb = norm(b);
  const double diff = norm(T(b + a * (-1.0)));
  const double rel = (nb > 0.0) ? diff / nb : diff;
  return {b, rel};
}

// Composite Gauss-Legendre over a straight segment [a, b] in 3-space.
// g maps a point on the segment to T. Sample doubling happens by splitting
// each segment, so refinement reuses the same panel structure.
template <typename T, typename G>
T integrate_segment(const Vec3& a, const Vec3& b, int panels, int order, const G& g,
                    T zero) {
  GaussLegendre gl(order);
  const Vec3 d = b - a;
  const double len = d.norm();
  if (len == 0.0) return zero;
  T acc = zero;
  for (int p = 0; p < panels; ++p) {
    const double t0 = static_cast<double>(p) / panels;
    const double t1 = static_cast<double>(p + 1) / panels;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double t = 0.5 * (t1 - t0) * gl.x[i] + 0.5 * (t0 + t1);
      acc += g(Vec3(a + t * d)) * (0.5 * (t1 - t0) * len * gl.w[i]);
    }
  }
  return acc;
}

// Uniform midpoint grid over a rectangular box. Exact (to roundoff) for
// products of the built-in box mode families: integer-harmonic cosines
// integrate to their true value on this grid for any grid size that
// resolves the harmonic.
template <typename T, typename F>
T integrate_box_midpoint(const Vec3& lo, const Vec3& hi, int nx, int ny, int nz,
                         const F& f, T zero) {
  const Vec3 L = hi - lo;
  const double cell = (L.x() / nx) * (L.y() / ny) * (L.z() / nz);
  T acc = zero;
  for (int i = 0; i < nx; ++i) {
    const double x = lo.x() + (i + 0.5) * L.x() / nx;
    for (int j = 0; j < ny; ++j) {
      const double y = lo.y() + (j + 0.5) * L.y() / ny;
      T row = zero;  // row-wise accumulation keeps the summation order fixed
      for (int kk = 0; kk < nz; ++kk) {
        const double z = lo.z() + (kk + 0.5) * L.z() / nz;
        row += f(Vec3(x, y, z));
      }
      acc += row * 1.0;
    }
  }
  return acc * cell;
}

} // namespace optomech

#endif
