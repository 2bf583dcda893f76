#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace swe {

// One cell's (or trace point's) conserved variables: water column a
// (h or h_sigma) and the two momenta (q_x, q_y) or (Q_theta, Q_phi).
struct State {
  double a = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

using Vec3 = std::array<double, 3>;

enum class Axis { X, Y };  // theta / phi in spherical mode

// Edge frame of the rotated 1D Riemann problem: delta rescales the
// fluctuation, nu is the unit normal of the rotated system.
struct EdgeGeometry {
  double sigma = 1.0;
  double delta = 1.0;
  double nu1 = 1.0, nu2 = 0.0;
};

// Convective flux of the pressure-free formulation; the g h^2/2 term lives in
// the nonconservative pressure term instead.
inline Vec3 flux_cartesian(const State& w, Axis axis) {
  if (w.a == 0.0) {
    if (w.m1 != 0.0 || w.m2 != 0.0)
      throw std::invalid_argument("flux: dry state with nonzero momentum");
    return {0.0, 0.0, 0.0};
  }
  if (axis == Axis::X)
    return {w.m1, w.m1 * w.m1 / w.a, w.m1 * w.m2 / w.a};
  return {w.m2, w.m1 * w.m2 / w.a, w.m2 * w.m2 / w.a};
}

inline Vec3 flux_spherical(const State& w, double sigma, Axis axis) {
  if (w.a == 0.0) {
    if (w.m1 != 0.0 || w.m2 != 0.0)
      throw std::invalid_argument("flux: dry state with nonzero momentum");
    return {0.0, 0.0, 0.0};
  }
  if (axis == Axis::X) {
    const double as = w.a * sigma;
    return {w.m1 / sigma, w.m1 * w.m1 / as, w.m2 * w.m1 / as};
  }
  return {w.m2, w.m1 * w.m2 / w.a, w.m2 * w.m2 / w.a};
}

// Pressure (nonconservative) coefficient vector T^p; multiplies the gradient
// of the free-surface reconstruction.
inline Vec3 pressure_vector(double a, double sigma, Axis axis, double g) {
  if (axis == Axis::X) return {0.0, g * a / (sigma * sigma), 0.0};
  return {0.0, 0.0, g * a / sigma};
}

// Spherical geometric source G = G1 + G2; the caller multiplies by
// d(sigma)/d(phi) = -sin(phi). f_point is the fluctuation reconstruction
// value standing in for eta_sigma.
inline Vec3 geometric_source(const State& w, double sigma, double f_point,
                             double g) {
  if (w.a <= 0.0) return {0.0, 0.0, 0.0};
  const double as = w.a * sigma;
  return {0.0, w.m1 * w.m2 / as,
          -w.m1 * w.m1 / as - g * w.a * f_point / (sigma * sigma)};
}

inline State rotate(const State& w, double nu1, double nu2) {
  return {w.a, nu1 * w.m1 + nu2 * w.m2, -nu2 * w.m1 + nu1 * w.m2};
}

inline State unrotate(const State& w, double nu1, double nu2) {
  return {w.a, nu1 * w.m1 - nu2 * w.m2, nu2 * w.m1 + nu1 * w.m2};
}

inline Vec3 unrotate(const Vec3& v, double nu1, double nu2) {
  return {v[0], nu1 * v[1] - nu2 * v[2], nu2 * v[1] + nu1 * v[2]};
}

// Frame of an axis-aligned edge with outward normal sign on the given axis.
// In Cartesian mode delta = 1 and nu = n.
inline EdgeGeometry edge_geometry(bool spherical, Axis axis, double sign,
                                  double sigma_at_point) {
  EdgeGeometry eg;
  eg.sigma = sigma_at_point;
  if (axis == Axis::X) {
    eg.delta = spherical ? 1.0 / sigma_at_point : 1.0;
    eg.nu1 = sign;
    eg.nu2 = 0.0;
  } else {
    eg.delta = 1.0;
    eg.nu1 = 0.0;
    eg.nu2 = sign;
  }
  return eg;
}

}  // namespace swe
