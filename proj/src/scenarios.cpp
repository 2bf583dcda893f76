#include "swe/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "swe/quadrature.hpp"

namespace swe {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Tensor-Gauss cell average of a pointwise function over interior cell (i, j)
// in the coordinate plane.
template <class F>
double cell_average(const Grid& grid, int i, int j, int q, F&& fn) {
  const GaussRule& gr = gauss_rule(q);
  const double xc = grid.xc(i), yc = grid.yc(j);
  double sum = 0.0;
  for (int ly = 0; ly < gr.n; ++ly)
    for (int lx = 0; lx < gr.n; ++lx)
      sum += gr.weight[lx] * gr.weight[ly] *
             fn(xc + gr.node[lx] * grid.dx, yc + gr.node[ly] * grid.dy);
  return sum;
}

void zero_dry_momenta(StateField& f, double h_dry = 1e-8) {
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      const auto id = f.idx(i, j);
      if (f.a[id] / f.sigma(j) < h_dry) {
        f.m1[id] = 0.0;
        f.m2[id] = 0.0;
      }
    }
}

}  // namespace

double mean_bathymetry_deg(double theta_deg, double phi_deg) {
  const double ct = std::cos(std::numbers::pi * theta_deg / 60.0);
  const double sp = std::sin(std::numbers::pi * phi_deg / 60.0);
  return 2.0 - ct * ct * sp * sp;
}

double thacker_omega(const ScenarioParams& p) {
  return std::sqrt(2.0 * p.g * p.thacker_h0) / p.thacker_a;
}

StateField init_vortex(const Grid& grid, const ScenarioParams& p) {
  StateField f(grid);
  const double coef = p.vortex_vbar * p.vortex_vbar / (4.0 * p.vortex_alpha * p.g);
  auto h_at = [&](double x, double y) {
    const double r2 = x * x + y * y;
    return p.vortex_h0 - coef * std::exp(2.0 * p.vortex_alpha * (1.0 - r2));
  };
  auto speed_factor = [&](double x, double y) {
    const double r = std::sqrt(x * x + y * y);
    return p.vortex_vbar * std::exp(p.vortex_alpha * (1.0 - r * r)) * r /
           (r + p.vortex_eps);
  };
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto id = f.idx(i, j);
      f.a[id] = cell_average(grid, i, j, p.quad_pts, h_at);
      f.m1[id] = cell_average(grid, i, j, p.quad_pts, [&](double x, double y) {
        return -h_at(x, y) * speed_factor(x, y) * y;
      });
      f.m2[id] = cell_average(grid, i, j, p.quad_pts, [&](double x, double y) {
        return h_at(x, y) * speed_factor(x, y) * x;
      });
      f.Hsig[id] = 0.0;
    }
  return f;
}

StateField thacker_exact(const Grid& grid, double t, const ScenarioParams& p) {
  StateField f(grid);
  const double omega = thacker_omega(p);
  const double C = p.thacker_sigma * p.thacker_h0 /
                   (p.thacker_a * p.thacker_a);
  const double ky = p.thacker_printed_variant ? 1.0 : 2.0;
  const double cwt = std::cos(omega * t), swt = std::sin(omega * t);
  const double ux = -p.thacker_sigma * omega * swt;
  const double uy = p.thacker_sigma * omega * cwt;
  auto bathy = [&](double x, double y) {
    return p.thacker_h0 *
           (1.0 - (x * x + y * y) / (p.thacker_a * p.thacker_a));
  };
  auto h_at = [&](double x, double y) {
    const double v =
        C * (2.0 * x * cwt + ky * y * swt - p.thacker_sigma) + bathy(x, y);
    return std::max(0.0, v);
  };
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto id = f.idx(i, j);
      const double hbar = cell_average(grid, i, j, p.quad_pts, h_at);
      f.a[id] = hbar;
      f.m1[id] = hbar * ux;
      f.m2[id] = hbar * uy;
      f.Hsig[id] = cell_average(grid, i, j, p.quad_pts, bathy);
    }
  zero_dry_momenta(f);
  return f;
}

StateField init_thacker(const Grid& grid, const ScenarioParams& p) {
  return thacker_exact(grid, 0.0, p);
}

StateField init_spherical_rest(const Grid& grid, const ScenarioParams& p) {
  StateField f(grid);
  std::mt19937_64 rng(p.seed);
  // Explicit bit mapping instead of a distribution, so the noise field is
  // bitwise identical across standard libraries.
  auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double noise = p.noise_amplitude * uniform();
      const double hsig =
          cell_average(grid, i, j, p.quad_pts, [&](double th, double ph) {
            return (mean_bathymetry_deg(th * kRadToDeg, ph * kRadToDeg) +
                    noise) *
                   std::cos(ph);
          });
      const auto id = f.idx(i, j);
      f.Hsig[id] = hsig;
      f.a[id] = hsig;  // eta identically zero
      f.m1[id] = 0.0;
      f.m2[id] = 0.0;
    }
  return f;
}

StateField init_simple_wave(const Grid& grid, const ScenarioParams& p) {
  StateField f(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto id = f.idx(i, j);
      f.Hsig[id] = cell_average(grid, i, j, p.quad_pts, [&](double th, double ph) {
        return mean_bathymetry_deg(th * kRadToDeg, ph * kRadToDeg) *
               std::cos(ph);
      });
      f.a[id] = cell_average(grid, i, j, p.quad_pts, [&](double th, double ph) {
        const double td = th * kRadToDeg, pd = ph * kRadToDeg;
        const double eta = p.wave_amplitude *
                           std::exp(-(td * td + pd * pd) / p.wave_width);
        return (mean_bathymetry_deg(td, pd) + eta) * std::cos(ph);
      });
      f.m1[id] = 0.0;
      f.m2[id] = 0.0;
    }
  return f;
}

std::pair<int, int> locate_cell_deg(const Grid& grid, double theta_deg,
                                    double phi_deg) {
  const double th = theta_deg * kDegToRad, ph = phi_deg * kDegToRad;
  int i = static_cast<int>(std::floor((th - grid.x0) / grid.dx));
  int j = static_cast<int>(std::floor((ph - grid.y0) / grid.dy));
  i = std::clamp(i, 0, grid.nx - 1);
  j = std::clamp(j, 0, grid.ny - 1);
  return {i, j};
}

namespace {

GridConfig spherical_grid(double resolution_deg) {
  GridConfig gc;
  gc.geometry = Geometry::Spherical;
  gc.radius = 10000.0;
  gc.x0 = -180.0 * kDegToRad;
  gc.x1 = 180.0 * kDegToRad;
  gc.y0 = -89.5 * kDegToRad;
  gc.y1 = 89.5 * kDegToRad;
  gc.nx = static_cast<int>(std::lround(360.0 / resolution_deg));
  gc.ny = static_cast<int>(std::lround(179.0 / resolution_deg));
  return gc;
}

}  // namespace

Scenario make_scenario(const std::string& name, const ScenarioParams& params) {
  Scenario s;
  s.name = name;
  const ScenarioParams p = params;
  if (name == "vortex") {
    const int n = p.cells > 0 ? p.cells : 100;
    s.grid = {n, n, -5.0, -5.0, 5.0, 5.0, Geometry::Cartesian, 1.0};
    s.bc = {BcType::Periodic, BcType::Periodic, BcType::Periodic,
            BcType::Periodic};
    s.init = [p](const Grid& g) { return init_vortex(g, p); };
    s.exact = [p](const Grid& g, double) { return init_vortex(g, p); };
    s.default_t_end = 1.0;
  } else if (name == "thacker") {
    const int n = p.cells > 0 ? p.cells : 200;
    s.grid = {n, n, -2.0, -2.0, 2.0, 2.0, Geometry::Cartesian, 1.0};
    s.bc = {BcType::Wall, BcType::Wall, BcType::Wall, BcType::Wall};
    s.init = [p](const Grid& g) { return init_thacker(g, p); };
    s.exact = [p](const Grid& g, double t) { return thacker_exact(g, t, p); };
    s.default_t_end = 2.0 * std::numbers::pi / thacker_omega(p);
  } else if (name == "spherical_rest") {
    s.grid = spherical_grid(p.resolution_deg);
    s.bc = {BcType::Periodic, BcType::Periodic, BcType::Wall, BcType::Wall};
    s.init = [p](const Grid& g) { return init_spherical_rest(g, p); };
    s.exact = [p](const Grid& g, double) { return init_spherical_rest(g, p); };
    s.default_t_end = 120.0;
  } else if (name == "simple_wave") {
    s.grid = spherical_grid(p.resolution_deg);
    s.bc = {BcType::Periodic, BcType::Periodic, BcType::Wall, BcType::Wall};
    s.init = [p](const Grid& g) { return init_simple_wave(g, p); };
    s.default_t_end = 3000.0;
  } else {
    throw std::invalid_argument("scenario: unknown name '" + name + "'");
  }
  return s;
}

}  // namespace swe
