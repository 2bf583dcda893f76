#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "swe/grid.hpp"
#include "swe/solver.hpp"

namespace swe {

struct ScenarioParams {
  // vortex
  double vortex_h0 = 2.0;
  double vortex_vbar = 1.0;
  double vortex_alpha = 1.0;
  double vortex_eps = 1e-16;
  // thacker
  double thacker_h0 = 0.1;
  double thacker_a = 1.0;
  double thacker_sigma = 0.5;
  // The classical planar solution carries the factor 2 on both the cos and
  // the sin term; this switch drops it from the sin term for comparison runs.
  bool thacker_printed_variant = false;
  // spherical_rest
  double noise_amplitude = 0.2;
  std::uint64_t seed = 42;
  // simple_wave
  double wave_amplitude = 0.1;
  double wave_width = 100.0;

  double g = 9.81;
  int quad_pts = 3;         // tensor-Gauss points per direction for averaging
  int cells = 0;            // Cartesian cells per direction; 0 = default
  double resolution_deg = 1.0;  // spherical grid spacing
};

// A named benchmark: grid, boundaries, initializer, and (when available) the
// exact solution as a function of time.
struct Scenario {
  std::string name;
  GridConfig grid;
  BoundarySpec bc;
  std::function<StateField(const Grid&)> init;
  std::function<StateField(const Grid&, double)> exact;  // empty if none
  double default_t_end = 1.0;
};

Scenario make_scenario(const std::string& name, const ScenarioParams& params);

StateField init_vortex(const Grid& grid, const ScenarioParams& params);
StateField init_thacker(const Grid& grid, const ScenarioParams& params);
StateField thacker_exact(const Grid& grid, double t,
                         const ScenarioParams& params);
StateField init_spherical_rest(const Grid& grid, const ScenarioParams& params);
StateField init_simple_wave(const Grid& grid, const ScenarioParams& params);

// Mean bathymetry of the spherical benchmarks, arguments in degrees.
double mean_bathymetry_deg(double theta_deg, double phi_deg);

double thacker_omega(const ScenarioParams& params);

// Interior cell containing the given point in degrees (spherical grids).
std::pair<int, int> locate_cell_deg(const Grid& grid, double theta_deg,
                                    double phi_deg);

}  // namespace swe
