#include "swe/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swe {

Grid build_grid(const GridConfig& config) {
  if (config.nx < 1 || config.ny < 1)
    throw std::invalid_argument("grid: cell counts must be positive");
  if (config.x1 <= config.x0 || config.y1 <= config.y0)
    throw std::invalid_argument("grid: domain extents must be positive");

  Grid g;
  g.nx = config.nx;
  g.ny = config.ny;
  g.x0 = config.x0;
  g.y0 = config.y0;
  g.dx = (config.x1 - config.x0) / config.nx;
  g.dy = (config.y1 - config.y0) / config.ny;
  g.geometry = config.geometry;
  g.radius = config.geometry == Geometry::Spherical ? config.radius : 1.0;

  if (g.geometry == Geometry::Spherical) {
    if (config.radius <= 0.0)
      throw std::invalid_argument("grid: spherical radius must be positive");
    const double half_pi = std::numbers::pi / 2.0;
    if (g.y0 <= -half_pi || g.y0 + g.ny * g.dy >= half_pi)
      throw std::invalid_argument(
          "grid: spherical domain touches or crosses a pole");
  }
  return g;
}

double sigma_cell_average(const Grid& grid, int j) {
  if (grid.geometry == Geometry::Cartesian) return 1.0;
  const double phi_b = grid.y0 + j * grid.dy;
  const double phi_t = phi_b + grid.dy;
  return (std::sin(phi_t) - std::sin(phi_b)) / grid.dy;
}

StateField::StateField(const Grid& grid) : nx(grid.nx), ny(grid.ny) {
  a.assign(size(), 0.0);
  m1.assign(size(), 0.0);
  m2.assign(size(), 0.0);
  Hsig.assign(size(), 0.0);
  sigma_bar.resize(ny + 2 * Grid::halo);
  for (int j = -Grid::halo; j < ny + Grid::halo; ++j)
    sigma_bar[j + Grid::halo] = sigma_cell_average(grid, j);
}

void validate_bc(const BoundarySpec& bc) {
  const bool px = bc.west == BcType::Periodic, qx = bc.east == BcType::Periodic;
  const bool py = bc.south == BcType::Periodic, qy = bc.north == BcType::Periodic;
  if (px != qx || py != qy)
    throw std::invalid_argument(
        "bc: periodic must be declared on both members of an opposite pair");
}

namespace {

// Maps a ghost index to its interior source for one side; flip = true means
// the wall-normal momentum changes sign.
struct GhostSource {
  int src;
  bool flip;
};

GhostSource side_source(BcType bc, int ghost, int n) {
  switch (bc) {
    case BcType::Periodic:
      return {ghost < 0 ? ghost + n : ghost - n, false};
    case BcType::Wall:
      return {ghost < 0 ? -1 - ghost : 2 * n - 1 - ghost, true};
    default:  // open: zeroth-order extrapolation
      return {ghost < 0 ? 0 : n - 1, false};
  }
}

}  // namespace

void fill_ghosts(StateField& f, const Grid& grid, const BoundarySpec& bc) {
  validate_bc(bc);
  const int nx = f.nx, ny = f.ny, h = Grid::halo;

  // x-direction first, interior rows only.
  for (int j = 0; j < ny; ++j) {
    for (int g = 1; g <= h; ++g) {
      const auto w = side_source(bc.west, -g, nx);
      const auto e = side_source(bc.east, nx - 1 + g, nx);
      const auto dw = f.idx(-g, j), sw = f.idx(w.src, j);
      const auto de = f.idx(nx - 1 + g, j), se = f.idx(e.src, j);
      f.a[dw] = f.a[sw];
      f.a[de] = f.a[se];
      f.m1[dw] = w.flip ? -f.m1[sw] : f.m1[sw];
      f.m1[de] = e.flip ? -f.m1[se] : f.m1[se];
      f.m2[dw] = f.m2[sw];
      f.m2[de] = f.m2[se];
      f.Hsig[dw] = f.Hsig[sw];
      f.Hsig[de] = f.Hsig[se];
    }
  }

  // y-direction over the full extended x-range, so corners are filled too.
  // Ghost rows also take their metric from the source row: with a wall at a
  // high latitude the halo is the mirror image of the interior, which keeps
  // h = a / sigma_bar consistent even when the geometric continuation of the
  // row would cross a pole.
  for (int g = 1; g <= h; ++g) {
    const auto s = side_source(bc.south, -g, ny);
    const auto n = side_source(bc.north, ny - 1 + g, ny);
    f.sigma_bar[-g + Grid::halo] = f.sigma_bar[s.src + Grid::halo];
    f.sigma_bar[ny - 1 + g + Grid::halo] = f.sigma_bar[n.src + Grid::halo];
    for (int i = -h; i < nx + h; ++i) {
      const auto ds = f.idx(i, -g), ss = f.idx(i, s.src);
      const auto dn = f.idx(i, ny - 1 + g), sn = f.idx(i, n.src);
      f.a[ds] = f.a[ss];
      f.a[dn] = f.a[sn];
      f.m1[ds] = f.m1[ss];
      f.m1[dn] = f.m1[sn];
      f.m2[ds] = s.flip ? -f.m2[ss] : f.m2[ss];
      f.m2[dn] = n.flip ? -f.m2[sn] : f.m2[sn];
      f.Hsig[ds] = f.Hsig[ss];
      f.Hsig[dn] = f.Hsig[sn];
    }
  }
}

}  // namespace swe
