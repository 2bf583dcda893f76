#pragma once

#include <string>
#include <utility>
#include <vector>

#include "swe/grid.hpp"
#include "swe/scenarios.hpp"
#include "swe/solver.hpp"

namespace swe {

// ESRI ASCII grid. Values are stored row-major, rows north to south as in
// the file; at(r, c) follows that layout.
struct RasterGrid {
  int ncols = 0, nrows = 0;
  double xll = 0.0, yll = 0.0, cellsize = 0.0;
  double nodata = -9999.0;
  std::vector<double> values;

  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * ncols + c]; }
  bool is_nodata(double v) const { return v == nodata; }
};

RasterGrid read_raster(const std::string& path);

// Bilinear interpolation between the four surrounding node values (nodes at
// cell centers); coordinates are clamped to the node hull. Nodata nodes take
// the given replacement value.
double raster_bilinear(const RasterGrid& raster, double x, double y,
                       double nodata_replacement);

struct RasterConfig {
  std::string path;
  bool positive_down = true;     // false: file stores elevation, H = -value
  std::string nodata_policy = "land";  // land | zero | error
  double land_height = 10.0;     // meters above datum for the land policy
};

// Resamples the raster onto Hsig of the field (bilinear nodes, then
// cell-averaged with a tensor-Gauss rule of quad_pts points per direction).
void apply_raster_bathymetry(StateField& field, const Grid& grid,
                             const RasterGrid& raster, const RasterConfig& rc,
                             int quad_pts);

struct GaugeSeries {
  double x = 0.0, y = 0.0;  // degrees on spherical grids
  std::vector<double> t;
  std::vector<double> eta;
};

struct OutputConfig {
  std::string directory = ".";
  std::string prefix = "out";
  double snapshot_interval = 0.0;  // 0 = final snapshot only
  double gauge_interval = 10.0;
  std::vector<std::pair<double, double>> gauges;
};

struct RunConfig {
  std::string scenario_name;
  ScenarioParams scenario;
  SchemeConfig scheme;
  GridConfig grid;
  bool grid_set = false;  // otherwise the scenario's default grid is used
  BoundarySpec bc;
  bool bc_set = false;
  RasterConfig raster;
  OutputConfig output;
  double t_end = -1.0;  // < 0: scenario default
};

// Line-oriented `section.key = value` format with `#` comments; sections
// grid, bc, scheme, scenario, raster, output. Unknown keys, type mismatches
// and invariant violations throw std::runtime_error naming key and line.
RunConfig parse_config(const std::string& text);

// Applies one `section.key=value` override on top of a parsed config.
void apply_override(RunConfig& config, const std::string& assignment);

void write_snapshot(const StateField& field, const Grid& grid, double time,
                    const std::string& path);
void write_gauges(const GaugeSeries& series, const std::string& path);

struct TableRow {
  int n = 0;
  double err_h = 0.0, rate_h = 0.0;
  double err_qx = 0.0, rate_qx = 0.0;
  double err_qy = 0.0, rate_qy = 0.0;
};
void write_table(const std::vector<TableRow>& rows, const std::string& path);

// Reads back a snapshot CSV; returns one row of 7 values per cell. Used by
// round-trip tests and available for plotting pipelines.
std::vector<std::array<double, 7>> read_snapshot(const std::string& path);

}  // namespace swe
