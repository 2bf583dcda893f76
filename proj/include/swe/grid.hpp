#pragma once

#include <cstddef>
#include <vector>

namespace swe {

enum class Geometry { Cartesian, Spherical };
enum class BcType { Periodic, Wall, Open };

struct BoundarySpec {
  BcType west = BcType::Periodic;
  BcType east = BcType::Periodic;
  BcType south = BcType::Periodic;
  BcType north = BcType::Periodic;
};

// Uniform structured grid in the x-y (Cartesian, meters) or theta-phi
// (spherical, radians) plane, with a two-cell ghost halo.
struct Grid {
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  double x0 = 0.0, y0 = 0.0;  // lower-left corner of the physical domain
  Geometry geometry = Geometry::Cartesian;
  double radius = 1.0;  // meters; 1 in Cartesian mode
  static constexpr int halo = 2;

  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  double x_length() const { return nx * dx; }
  double y_length() const { return ny * dy; }
  // Coordinate-plane cell area; metric factors enter through sigma and R.
  double cell_area() const { return dx * dy; }
};

struct GridConfig {
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  Geometry geometry = Geometry::Cartesian;
  double radius = 1.0;
};

// Validates counts and, in spherical mode, that the interior stays strictly
// clear of the poles. Ghost rows may geometrically cross a pole; their metric
// is replaced by the boundary mapping in fill_ghosts.
Grid build_grid(const GridConfig& config);

// Exact cell average of sigma = cos(phi) on row j (ghost rows included,
// j in [-halo, ny+halo)). Identically 1 in Cartesian mode.
double sigma_cell_average(const Grid& grid, int j);

// Cell-average storage for the conserved variables over the (nx+4) x (ny+4)
// index box. Component meaning: a = h (Cartesian) or h_sigma (spherical),
// m1/m2 the matching momenta. Hsig holds cell averages of the bathymetry
// (H, or H*cos(phi)); sigma_bar the exact per-row averages of cos(phi).
struct StateField {
  int nx = 0, ny = 0;
  std::vector<double> a, m1, m2, Hsig;
  std::vector<double> sigma_bar;  // size ny + 2*halo, indexed by row

  StateField() = default;
  explicit StateField(const Grid& grid);

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i + Grid::halo) +
           static_cast<std::size_t>(nx + 2 * Grid::halo) *
               static_cast<std::size_t>(j + Grid::halo);
  }
  double sigma(int j) const { return sigma_bar[j + Grid::halo]; }
  std::size_t size() const {
    return static_cast<std::size_t>(nx + 2 * Grid::halo) *
           static_cast<std::size_t>(ny + 2 * Grid::halo);
  }
};

// Fills the two-cell halo of a, m1, m2, Hsig according to the boundary spec,
// and maps the ghost rows' sigma_bar from their source rows.
void fill_ghosts(StateField& field, const Grid& grid, const BoundarySpec& bc);

void validate_bc(const BoundarySpec& bc);

}  // namespace swe
