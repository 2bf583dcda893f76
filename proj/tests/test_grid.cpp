#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swe/grid.hpp"
#include "swe/quadrature.hpp"

using namespace swe;

namespace {

Grid small_grid(int nx = 4, int ny = 3) {
  GridConfig gc{nx, ny, 0.0, 0.0, 1.0 * nx, 1.0 * ny, Geometry::Cartesian, 1.0};
  return build_grid(gc);
}

void fill_pattern(StateField& f) {
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      const auto id = f.idx(i, j);
      f.a[id] = 1.0 + i + 10.0 * j;
      f.m1[id] = 0.1 * (i - j);
      f.m2[id] = 0.2 * (i + j);
      f.Hsig[id] = 5.0 - 0.1 * i;
    }
}

}  // namespace

TEST_CASE("build_grid validation") {
  CHECK_THROWS(build_grid({0, 4, 0, 0, 1, 1, Geometry::Cartesian, 1.0}));
  CHECK_THROWS(build_grid({4, 4, 0, 0, 0, 1, Geometry::Cartesian, 1.0}));
  CHECK_THROWS(build_grid({4, 4, 1, 0, 0, 1, Geometry::Cartesian, 1.0}));
  CHECK_THROWS(build_grid({4, 4, 0, 0, 1, 1, Geometry::Spherical, -1.0}));

  const Grid g = build_grid({10, 5, -5, -2.5, 5, 2.5, Geometry::Cartesian, 1.0});
  CHECK(g.dx == doctest::Approx(1.0));
  CHECK(g.dy == doctest::Approx(1.0));
  CHECK(g.xc(0) == doctest::Approx(-4.5));
  CHECK(g.yc(4) == doctest::Approx(2.0));
  CHECK(g.radius == 1.0);
}

TEST_CASE("spherical halo must stay clear of the poles") {
  const double d2r = std::numbers::pi / 180.0;
  CHECK_THROWS(build_grid({360, 180, -180 * d2r, -90 * d2r, 180 * d2r,
                           90 * d2r, Geometry::Spherical, 1.0}));
}

TEST_CASE("high-latitude wall grid builds; ghost metric mirrors the wall") {
  const double d2r = std::numbers::pi / 180.0;
  // Interior up to +-89.5; the geometric continuation of the halo would
  // cross the poles, but the wall mapping mirrors it instead.
  const Grid g = build_grid({360, 179, -180 * d2r, -89.5 * d2r, 180 * d2r,
                             89.5 * d2r, Geometry::Spherical, 10000.0});
  CHECK(g.ny == 179);
  StateField f(g);
  BoundarySpec bc{BcType::Periodic, BcType::Periodic, BcType::Wall,
                  BcType::Wall};
  fill_ghosts(f, g, bc);
  CHECK(f.sigma(-1) == f.sigma(0));
  CHECK(f.sigma(-2) == f.sigma(1));
  CHECK(f.sigma(g.ny) == f.sigma(g.ny - 1));
  CHECK(f.sigma(g.ny + 1) == f.sigma(g.ny - 2));
  for (int j = -Grid::halo; j < g.ny + Grid::halo; ++j) CHECK(f.sigma(j) > 0.0);
}

TEST_CASE("sigma_cell_average is the exact average of cos") {
  const double d2r = std::numbers::pi / 180.0;
  const Grid g = build_grid({36, 17, -180 * d2r, -85 * d2r, 180 * d2r,
                             85 * d2r, Geometry::Spherical, 1.0});
  const GaussRule& gr = gauss_rule(3);
  for (int j = -Grid::halo; j < g.ny + Grid::halo; ++j) {
    const double exact = sigma_cell_average(g, j);
    double quad = 0.0;
    for (int l = 0; l < 3; ++l)
      quad += gr.weight[l] * std::cos(g.yc(j) + gr.node[l] * g.dy);
    CHECK(exact == doctest::Approx(quad).epsilon(1e-9).scale(1.0));
    // The geometric continuation past the poles may have a nonpositive
    // average; only interior rows must be positive.
    if (j >= 0 && j < g.ny) CHECK(exact > 0.0);
    CHECK(exact <= 1.0);
  }
  const Grid gc = small_grid();
  CHECK(sigma_cell_average(gc, 1) == 1.0);
}

TEST_CASE("StateField layout and sigma table") {
  const Grid g = small_grid(5, 4);
  StateField f(g);
  CHECK(f.size() == static_cast<std::size_t>((5 + 4) * (4 + 4)));
  CHECK(f.sigma(-2) == 1.0);
  CHECK(f.sigma(5) == 1.0);
  // idx covers the extended box without collisions at the corners.
  CHECK(f.idx(-2, -2) == 0);
  CHECK(f.idx(6, 5) == f.size() - 1);
}

TEST_CASE("validate_bc rejects one-sided periodicity") {
  BoundarySpec bc;
  bc.west = BcType::Periodic;
  bc.east = BcType::Wall;
  CHECK_THROWS(validate_bc(bc));
  bc.east = BcType::Periodic;
  bc.south = BcType::Open;
  bc.north = BcType::Open;
  CHECK_NOTHROW(validate_bc(bc));
}

TEST_CASE("periodic ghosts wrap") {
  const Grid g = small_grid(4, 3);
  StateField f(g);
  fill_pattern(f);
  BoundarySpec bc;  // periodic everywhere
  fill_ghosts(f, g, bc);

  for (int j = 0; j < g.ny; ++j) {
    CHECK(f.a[f.idx(-1, j)] == f.a[f.idx(3, j)]);
    CHECK(f.a[f.idx(-2, j)] == f.a[f.idx(2, j)]);
    CHECK(f.a[f.idx(4, j)] == f.a[f.idx(0, j)]);
    CHECK(f.m2[f.idx(5, j)] == f.m2[f.idx(1, j)]);
  }
  for (int i = 0; i < g.nx; ++i) {
    CHECK(f.a[f.idx(i, -1)] == f.a[f.idx(i, 2)]);
    CHECK(f.m1[f.idx(i, 4)] == f.m1[f.idx(i, 1)]);
  }
  // Corner ghosts wrap in both directions.
  CHECK(f.a[f.idx(-1, -1)] == f.a[f.idx(3, 2)]);
  CHECK(f.a[f.idx(4, 3)] == f.a[f.idx(0, 0)]);
}

TEST_CASE("wall ghosts mirror and flip the normal momentum only") {
  const Grid g = small_grid(4, 3);
  StateField f(g);
  fill_pattern(f);
  BoundarySpec bc{BcType::Wall, BcType::Wall, BcType::Wall, BcType::Wall};
  fill_ghosts(f, g, bc);

  for (int j = 0; j < g.ny; ++j) {
    CHECK(f.a[f.idx(-1, j)] == f.a[f.idx(0, j)]);
    CHECK(f.a[f.idx(-2, j)] == f.a[f.idx(1, j)]);
    CHECK(f.m1[f.idx(-1, j)] == -f.m1[f.idx(0, j)]);
    CHECK(f.m2[f.idx(-1, j)] == f.m2[f.idx(0, j)]);
    CHECK(f.Hsig[f.idx(-1, j)] == f.Hsig[f.idx(0, j)]);
    CHECK(f.m1[f.idx(4, j)] == -f.m1[f.idx(3, j)]);
    CHECK(f.m1[f.idx(5, j)] == -f.m1[f.idx(2, j)]);
  }
  for (int i = 0; i < g.nx; ++i) {
    CHECK(f.m2[f.idx(i, -1)] == -f.m2[f.idx(i, 0)]);
    CHECK(f.m1[f.idx(i, -1)] == f.m1[f.idx(i, 0)]);
    CHECK(f.m2[f.idx(i, 3)] == -f.m2[f.idx(i, 2)]);
  }
}

TEST_CASE("open ghosts copy the boundary cell") {
  const Grid g = small_grid(4, 3);
  StateField f(g);
  fill_pattern(f);
  BoundarySpec bc{BcType::Open, BcType::Open, BcType::Open, BcType::Open};
  fill_ghosts(f, g, bc);

  for (int j = 0; j < g.ny; ++j) {
    CHECK(f.a[f.idx(-2, j)] == f.a[f.idx(0, j)]);
    CHECK(f.m1[f.idx(-1, j)] == f.m1[f.idx(0, j)]);
    CHECK(f.a[f.idx(5, j)] == f.a[f.idx(3, j)]);
  }
  for (int i = 0; i < g.nx; ++i)
    CHECK(f.m2[f.idx(i, -2)] == f.m2[f.idx(i, 0)]);
}

TEST_CASE("fill_ghosts is idempotent and preserves interior") {
  const Grid g = small_grid(4, 3);
  StateField f(g);
  fill_pattern(f);
  BoundarySpec bc{BcType::Periodic, BcType::Periodic, BcType::Wall,
                  BcType::Wall};
  fill_ghosts(f, g, bc);
  StateField copy = f;
  fill_ghosts(f, g, bc);
  for (std::size_t k = 0; k < f.size(); ++k) {
    CHECK(f.a[k] == copy.a[k]);
    CHECK(f.m1[k] == copy.m1[k]);
    CHECK(f.m2[k] == copy.m2[k]);
    CHECK(f.Hsig[k] == copy.Hsig[k]);
  }
}
