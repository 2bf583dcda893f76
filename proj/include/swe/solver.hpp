#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "swe/cweno.hpp"
#include "swe/grid.hpp"
#include "swe/physics.hpp"
#include "swe/poly.hpp"

namespace swe {

struct SchemeConfig {
  double cfl = 0.5;
  double g = 9.81;
  Variant variant = Variant::P2P1;
  double d0 = 0.75;
  double dr = 0.0625;
  EpsLaw eps_law = EpsLaw::H2;
  double eps_const = 1e-6;
  double h_dry = 1e-8;
  double end_time = 0.0;
  std::int64_t max_steps = 1'000'000'000;
  int threads = 1;  // 0 = hardware concurrency; never affects results

  int quad_edge() const { return variant == Variant::P2P1 ? 2 : 3; }
  int quad_vol() const { return quad_edge(); }  // points per direction

  CwenoParams cweno() const {
    return {variant, d0, dr, eps_law, eps_const, h_dry};
  }
};

// Per-cell reconstruction bundle: one polynomial per conserved component
// plus the fluctuation polynomial p_f (free-surface deviation from the local
// water-at-rest profile). Polynomials live in cell-local coordinates.
struct CellReconstruction {
  Poly a, m1, m2, f;
  double eta_bar = 0.0;
  bool wet = true;
};

// eta_bar_i and the 13 fluctuation values f_j over the diamond stencil of
// interior cell (i, j). Ghosts must be filled.
struct FluctuationData {
  double eta_bar = 0.0;
  std::array<double, 13> f{};
};
FluctuationData fluctuation_data(const StateField& field, const Grid& grid,
                                 int i, int j);

struct StepLog {
  std::int64_t steps = 0;
  std::int64_t clamp_events = 0;  // negative cell averages clamped to zero
};

using Observer = std::function<void(double, const StateField&)>;

// Owns the per-run workspace (row geometry tables, bathymetry point values,
// sampled reconstruction data) for one grid + scheme configuration.
class Solver {
 public:
  Solver(const Grid& grid, const BoundarySpec& bc, const SchemeConfig& cfg);

  // Full reconstruction pass; exposed for tests and diagnostics.
  std::vector<CellReconstruction> reconstruct_all(const StateField& field) const;

  // Semidiscrete right-hand side of the scheme, one State-sized rate per
  // interior cell (row-major).
  void semidiscrete_rhs(const StateField& field, std::vector<State>& rates);

  double stable_dt(const StateField& field) const;

  void ssp_rk3_step(StateField& field, double dt, StepLog& log);

  // Repeats stable_dt + ssp_rk3_step until t_end, truncating the last step.
  // Observers are invoked after every step (and once at t = 0).
  StepLog advance_to(StateField& field, double t_end,
                     const std::vector<Observer>& observers = {});

  const Grid& grid() const { return grid_; }
  const SchemeConfig& config() const { return cfg_; }

 private:
  struct RowGeom {
    double sigma_bar = 1.0;
    std::array<double, 3> sigma_qp{1.0, 1.0, 1.0};  // at Gauss latitudes
    std::array<double, 3> sin_qp{0.0, 0.0, 0.0};
    double sigma_s = 1.0, sigma_n = 1.0;  // at the cell's south/north edge
  };

  // Sampled reconstruction values at every scheme quadrature point of a cell.
  // Edge order W, E, S, N; per edge point: a, m1, m2, eta. Volume points
  // (row-major in the local Gauss tensor): a, m1, m2, f, df/dx, df/dy.
  struct PointData {
    double edge[4][3][4];
    double vol[9][6];
    bool wet;
  };

  std::size_t cell_index(int i, int j) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(grid_.nx) * static_cast<std::size_t>(j);
  }

  CellReconstruction reconstruct_one(const StateField& field, int i,
                                     int j) const;
  void sample_cell(const CellReconstruction& rec, int i, int j,
                   PointData& pd) const;
  // Fits and samples the bathymetry once, on first use; Hsig never changes.
  void ensure_bathy(const StateField& field) const;
  void reconstruct_and_sample(const StateField& field);
  void rhs_from_samples(const StateField& field, std::vector<State>& rates) const;
  void stage_postprocess(StateField& field, StepLog& log) const;

  Grid grid_;
  BoundarySpec bc_;
  SchemeConfig cfg_;
  bool spherical_;
  std::vector<RowGeom> rows_;  // interior rows
  // H (in h units) at the edge (12 per cell) and volume (9 per cell)
  // quadrature points; filled lazily from the first field seen.
  mutable std::vector<double> bathy_edge_;
  mutable std::vector<double> bathy_vol_;
  mutable bool bathy_ready_ = false;
  std::vector<PointData> samples_;
  std::vector<State> stage_rate_;
  StateField stage1_, stage2_;
};

// L1 norm of the difference of one component over interior cells, weighted by
// the coordinate-plane cell area. component: 0 = a, 1 = m1, 2 = m2.
double l1_error(const StateField& field, const StateField& reference,
                const Grid& grid, int component);

}  // namespace swe
