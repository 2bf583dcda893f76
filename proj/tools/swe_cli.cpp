// Batch front end: general runs, grid-convergence studies, and the
// water-at-rest balance check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swe/io.hpp"
#include "swe/scenarios.hpp"
#include "swe/solver.hpp"

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> locate_cell(const swe::Grid& grid, double x, double y) {
  if (grid.geometry == swe::Geometry::Spherical)
    return swe::locate_cell_deg(grid, x, y);
  int i = static_cast<int>(std::floor((x - grid.x0) / grid.dx));
  int j = static_cast<int>(std::floor((y - grid.y0) / grid.dy));
  return {std::clamp(i, 0, grid.nx - 1), std::clamp(j, 0, grid.ny - 1)};
}

double eta_at(const swe::StateField& f, int i, int j) {
  return (f.a[f.idx(i, j)] - f.Hsig[f.idx(i, j)]) / f.sigma(j);
}

// Lake at rest over the configured (possibly raster) bathymetry; the fallback
// scenario for custom-geometry runs.
swe::StateField init_rest(const swe::Grid& grid, const swe::RunConfig& cfg) {
  swe::StateField f(grid);
  if (!cfg.raster.path.empty()) {
    const swe::RasterGrid raster = swe::read_raster(cfg.raster.path);
    swe::apply_raster_bathymetry(f, grid, raster, cfg.raster,
                                 cfg.scenario.quad_pts);
  }
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto id = f.idx(i, j);
      f.a[id] = std::max(0.0, f.Hsig[id]);
    }
  return f;
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& overrides) {
  swe::RunConfig cfg;
  try {
    cfg = swe::parse_config(read_file(config_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const std::string& o : overrides) swe::apply_override(cfg, o);

  swe::Scenario scen;
  bool rest_fallback = false;
  if (cfg.scenario_name.empty() || cfg.scenario_name == "rest") {
    if (!cfg.grid_set)
      throw std::runtime_error(
          "run: the rest scenario needs an explicit [grid] section");
    rest_fallback = true;
    scen.name = "rest";
    scen.grid = cfg.grid;
    scen.bc = cfg.bc;
    scen.default_t_end = 120.0;
  } else {
    scen = swe::make_scenario(cfg.scenario_name, cfg.scenario);
    if (cfg.grid_set) scen.grid = cfg.grid;
    if (cfg.bc_set) scen.bc = cfg.bc;
  }

  const swe::Grid grid = swe::build_grid(scen.grid);
  swe::StateField field =
      rest_fallback ? init_rest(grid, cfg) : scen.init(grid);
  swe::fill_ghosts(field, grid, scen.bc);

  const double t_end = cfg.t_end >= 0.0 ? cfg.t_end : scen.default_t_end;
  swe::Solver solver(grid, scen.bc, cfg.scheme);

  std::filesystem::create_directories(cfg.output.directory);
  const std::string base = cfg.output.directory + "/" + cfg.output.prefix;

  std::vector<swe::GaugeSeries> gauges;
  std::vector<std::pair<int, int>> gauge_cells;
  for (const auto& [gx, gy] : cfg.output.gauges) {
    swe::GaugeSeries s;
    s.x = gx;
    s.y = gy;
    gauges.push_back(s);
    gauge_cells.push_back(locate_cell(grid, gx, gy));
  }
  auto record_gauges = [&](double t) {
    for (std::size_t k = 0; k < gauges.size(); ++k) {
      gauges[k].t.push_back(t);
      gauges[k].eta.push_back(
          eta_at(field, gauge_cells[k].first, gauge_cells[k].second));
    }
  };

  // Event times where the run must land exactly.
  std::vector<double> events;
  if (!gauges.empty() && cfg.output.gauge_interval > 0.0)
    for (double t = cfg.output.gauge_interval; t < t_end * (1.0 + 1e-12);
         t += cfg.output.gauge_interval)
      events.push_back(std::min(t, t_end));
  int snap_id = 0;
  std::vector<double> snap_times;
  if (cfg.output.snapshot_interval > 0.0)
    for (double t = cfg.output.snapshot_interval; t < t_end;
         t += cfg.output.snapshot_interval) {
      events.push_back(t);
      snap_times.push_back(t);
    }
  events.push_back(t_end);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) {
                             return std::abs(a - b) < 1e-9;
                           }),
               events.end());

  record_gauges(0.0);
  swe::StepLog log;
  double t = 0.0;
  auto is_gauge_time = [&](double tt) {
    if (gauges.empty() || cfg.output.gauge_interval <= 0.0) return false;
    const double k = tt / cfg.output.gauge_interval;
    return std::abs(k - std::round(k)) < 1e-9 || tt == t_end;
  };
  for (double te : events) {
    const swe::StepLog seg = solver.advance_to(field, te - t);
    log.steps += seg.steps;
    log.clamp_events += seg.clamp_events;
    t = te;
    if (is_gauge_time(t)) record_gauges(t);
    if (std::find(snap_times.begin(), snap_times.end(), te) != snap_times.end()) {
      swe::write_snapshot(field, grid, t,
                          base + "_t" + std::to_string(snap_id++) + ".csv");
    }
  }

  swe::write_snapshot(field, grid, t_end, base + "_final.csv");
  for (std::size_t k = 0; k < gauges.size(); ++k)
    swe::write_gauges(gauges[k],
                      base + "_gauge" + std::to_string(k) + ".csv");
  std::cout << "run: " << scen.name << " t_end=" << t_end
            << " steps=" << log.steps << " clamps=" << log.clamp_events
            << "\n";
  return 0;
}

int cmd_convergence(const std::string& scenario_name,
                    const std::string& variant, std::vector<int> grids,
                    double t_end_opt, const std::string& out_dir, int threads,
                    const std::vector<std::string>& overrides) {
  if (grids.size() < 2)
    throw std::runtime_error("convergence: need at least two grids for rates");
  swe::RunConfig cfg;
  swe::apply_override(cfg, "scheme.variant=" + variant);
  for (const std::string& o : overrides) swe::apply_override(cfg, o);
  cfg.scheme.threads = threads;

  std::vector<swe::TableRow> rows;
  for (std::size_t k = 0; k < grids.size(); ++k) {
    swe::ScenarioParams p = cfg.scenario;
    p.cells = grids[k];
    const swe::Scenario scen = swe::make_scenario(scenario_name, p);
    if (!scen.exact)
      throw std::runtime_error("convergence: scenario '" + scenario_name +
                               "' has no exact solution");
    const swe::Grid grid = swe::build_grid(scen.grid);
    swe::StateField field = scen.init(grid);
    swe::fill_ghosts(field, grid, scen.bc);
    const double t_end = t_end_opt > 0.0 ? t_end_opt : scen.default_t_end;
    swe::Solver solver(grid, scen.bc, cfg.scheme);
    solver.advance_to(field, t_end);
    const swe::StateField exact = scen.exact(grid, t_end);

    swe::TableRow row;
    row.n = grids[k];
    row.err_h = swe::l1_error(field, exact, grid, 0);
    row.err_qx = swe::l1_error(field, exact, grid, 1);
    row.err_qy = swe::l1_error(field, exact, grid, 2);
    const double nan = std::nan("");
    if (k == 0) {
      row.rate_h = row.rate_qx = row.rate_qy = nan;
    } else {
      const double rn = std::log2(static_cast<double>(grids[k]) /
                                  static_cast<double>(grids[k - 1]));
      row.rate_h = std::log2(rows.back().err_h / row.err_h) / rn;
      row.rate_qx = std::log2(rows.back().err_qx / row.err_qx) / rn;
      row.rate_qy = std::log2(rows.back().err_qy / row.err_qy) / rn;
    }
    rows.push_back(row);
    std::printf("N=%4d  err_h=%.6e rate=%5.2f  err_qx=%.6e rate=%5.2f  "
                "err_qy=%.6e rate=%5.2f\n",
                row.n, row.err_h, row.rate_h, row.err_qx, row.rate_qx,
                row.err_qy, row.rate_qy);
    std::fflush(stdout);
  }
  std::filesystem::create_directories(out_dir);
  swe::write_table(rows, out_dir + "/convergence_" + scenario_name + "_" +
                             variant + ".csv");
  return 0;
}

int cmd_balance(const std::string& geometry, std::uint64_t seed,
                double duration, const std::string& variant,
                double resolution_deg, const std::string& out_dir,
                int threads, const std::vector<std::string>& overrides) {
  swe::RunConfig cfg;
  swe::apply_override(cfg, "scheme.variant=" + variant);
  for (const std::string& o : overrides) swe::apply_override(cfg, o);
  cfg.scheme.threads = threads;
  cfg.scenario.seed = seed;
  cfg.scenario.resolution_deg = resolution_deg;

  swe::Grid grid;
  swe::BoundarySpec bc;
  swe::StateField field;
  if (geometry == "spherical") {
    const swe::Scenario scen =
        swe::make_scenario("spherical_rest", cfg.scenario);
    grid = swe::build_grid(scen.grid);
    bc = scen.bc;
    field = scen.init(grid);
  } else if (geometry == "cartesian") {
    // Lake at rest over a discontinuous step bottom.
    swe::GridConfig gc{50, 50, 0.0, 0.0, 1.0, 1.0, swe::Geometry::Cartesian,
                       1.0};
    grid = swe::build_grid(gc);
    bc = {swe::BcType::Wall, swe::BcType::Wall, swe::BcType::Wall,
          swe::BcType::Wall};
    field = swe::StateField(grid);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const auto id = field.idx(i, j);
        field.Hsig[id] = grid.xc(i) < 0.5 ? 1.0 : 0.6;
        field.a[id] = field.Hsig[id];  // eta = 0
      }
  } else {
    throw std::runtime_error("balance: geometry must be spherical|cartesian");
  }
  swe::fill_ghosts(field, grid, bc);
  const swe::StateField initial = field;

  double ref = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      ref += std::abs(initial.a[initial.idx(i, j)]);
  ref *= grid.cell_area();

  std::vector<double> checkpoints;
  for (double c : {10.0, 60.0, 120.0})
    if (c < duration) checkpoints.push_back(c);
  checkpoints.push_back(duration);

  swe::Solver solver(grid, bc, cfg.scheme);
  std::filesystem::create_directories(out_dir);
  std::ofstream report(out_dir + "/balance_" + geometry + "_" + variant +
                       ".csv");
  report << "t,drift_h,drift_qx,drift_qy\n";
  bool pass = true;
  double t = 0.0;
  for (double tc : checkpoints) {
    solver.advance_to(field, tc - t);
    t = tc;
    const double dh = swe::l1_error(field, initial, grid, 0) / ref;
    const double d1 = swe::l1_error(field, initial, grid, 1) / ref;
    const double d2 = swe::l1_error(field, initial, grid, 2) / ref;
    report << t << ',' << dh << ',' << d1 << ',' << d2 << '\n';
    std::printf("t=%6.1f  drift_h=%.3e  drift_qx=%.3e  drift_qy=%.3e\n", t,
                dh, d1, d2);
    std::fflush(stdout);
    if (!(dh <= 1e-12 && d1 <= 1e-12 && d2 <= 1e-12)) pass = false;
  }
  std::cout << (pass ? "balance: PASS\n" : "balance: FAIL\n");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume shallow water solver (CWENO, well-balanced)"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::vector<std::string> overrides;
  std::uint64_t seed = 42;
  int threads = 1;

  auto* run = app.add_subcommand("run", "Run a configured simulation");
  run->add_option("--config", config_path, "Config file path")->required();
  run->add_option("--set", overrides, "Override section.key=value");
  run->add_option("--output", out_dir, "Output directory");
  run->add_option("--seed", seed, "Noise seed");
  run->add_option("--threads", threads, "Worker threads (0 = auto)");

  std::string scenario_name = "vortex", variant = "p2p1";
  std::vector<int> grids = {25, 50, 100, 200, 400};
  double t_end = -1.0;
  auto* conv = app.add_subcommand("convergence", "Grid-refinement study");
  conv->add_option("--scenario", scenario_name, "Scenario with exact solution");
  conv->add_option("--variant", variant, "p2p1|p3p1|p3p2");
  conv->add_option("--grids", grids, "Cells per direction, ascending");
  conv->add_option("--t-end", t_end, "Final time (default: scenario)");
  conv->add_option("--output", out_dir, "Output directory");
  conv->add_option("--threads", threads, "Worker threads (0 = auto)");
  conv->add_option("--set", overrides, "Override section.key=value");

  std::string geometry = "spherical";
  double duration = 120.0, resolution_deg = 1.0;
  auto* bal = app.add_subcommand("balance", "Water-at-rest drift check");
  bal->add_option("--geometry", geometry, "spherical|cartesian");
  bal->add_option("--seed", seed, "Bathymetry noise seed");
  bal->add_option("--duration", duration, "Run length in seconds");
  bal->add_option("--variant", variant, "p2p1|p3p1|p3p2");
  bal->add_option("--resolution-deg", resolution_deg, "Spherical grid spacing");
  bal->add_option("--output", out_dir, "Output directory");
  bal->add_option("--threads", threads, "Worker threads (0 = auto)");
  bal->add_option("--set", overrides, "Override section.key=value");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      overrides.push_back("scheme.threads=" + std::to_string(threads));
      overrides.push_back("output.directory=" + out_dir);
      if (seed != 42)
        overrides.push_back("scenario.seed=" + std::to_string(seed));
      return cmd_run(config_path, overrides);
    }
    if (conv->parsed())
      return cmd_convergence(scenario_name, variant, grids, t_end, out_dir,
                             threads, overrides);
    return cmd_balance(geometry, seed, duration, variant, resolution_deg,
                       out_dir, threads, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
