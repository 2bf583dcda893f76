#include "swe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "swe/quadrature.hpp"
#include "swe/riemann.hpp"

namespace swe {

namespace {

// Runs fn(j) for every row j in [0, ny). With threads <= 1 the loop is
// serial; otherwise rows are split into contiguous chunks. Each invocation
// writes only to its own row, so the result never depends on thread count.
void parallel_rows(int ny, int threads, const std::function<void(int)>& fn) {
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || ny < 2) {
    for (int j = 0; j < ny; ++j) fn(j);
    return;
  }
  threads = std::min(threads, ny);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int lo = static_cast<int>(static_cast<long>(ny) * t / threads);
    const int hi = static_cast<int>(static_cast<long>(ny) * (t + 1) / threads);
    pool.emplace_back([lo, hi, &fn] {
      for (int j = lo; j < hi; ++j) fn(j);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

FluctuationData fluctuation_data(const StateField& field, const Grid& grid,
                                 int i, int j) {
  (void)grid;
  FluctuationData out;
  const double sig0 = field.sigma(j);
  out.eta_bar =
      (field.a[field.idx(i, j)] - field.Hsig[field.idx(i, j)]) / sig0;
  for (int k = 0; k < 13; ++k) {
    const auto [di, dj] = kStencilOffsets[k];
    const auto id = field.idx(i + di, j + dj);
    out.f[k] = (field.a[id] - field.Hsig[id]) - out.eta_bar * field.sigma(j + dj);
  }
  out.f[0] = 0.0;  // exact by construction; avoid roundoff residue
  return out;
}

Solver::Solver(const Grid& grid, const BoundarySpec& bc,
               const SchemeConfig& cfg)
    : grid_(grid),
      bc_(bc),
      cfg_(cfg),
      spherical_(grid.geometry == Geometry::Spherical) {
  validate_bc(bc_);
  const GaussRule& gr = gauss_rule(cfg_.quad_edge());
  rows_.resize(grid_.ny);
  for (int j = 0; j < grid_.ny; ++j) {
    RowGeom& r = rows_[j];
    r.sigma_bar = sigma_cell_average(grid_, j);
    if (spherical_) {
      const double phic = grid_.yc(j);
      for (int l = 0; l < gr.n; ++l) {
        const double phi = phic + gr.node[l] * grid_.dy;
        r.sigma_qp[l] = std::cos(phi);
        r.sin_qp[l] = std::sin(phi);
      }
      r.sigma_s = std::cos(grid_.y0 + j * grid_.dy);
      r.sigma_n = std::cos(grid_.y0 + (j + 1) * grid_.dy);
    }
  }
  const std::size_t ncells =
      static_cast<std::size_t>(grid_.nx) * static_cast<std::size_t>(grid_.ny);
  samples_.resize(ncells);
  stage_rate_.resize(ncells);
}

namespace {

// theta in [0, 1] such that base + theta * (value - base) >= floor, where
// base is the point value of the unscaled profile.
double theta_for_point(double base, double value, double floor) {
  if (value >= floor) return 1.0;
  if (base <= floor) return 0.0;
  return (base - floor) / (base - value);
}

void scale_deviation(Poly& p, double theta) {
  for (int k = 1; k < 10; ++k) p.c[k] *= theta;
  // c[0] is the cell average and stays put; f additionally has c[0] = 0.
}

}  // namespace

void Solver::ensure_bathy(const StateField& field) const {
  if (bathy_ready_) return;
  const GaussRule& gr = gauss_rule(cfg_.quad_edge());
  const int k = gr.n, kv = k * k;
  bathy_edge_.assign(samples_.size() * 12, 0.0);
  bathy_vol_.assign(samples_.size() * 9, 0.0);
  const double dx = grid_.dx, dy = grid_.dy;
  for (int j = 0; j < grid_.ny; ++j) {
    const RowGeom& row = rows_[j];
    for (int i = 0; i < grid_.nx; ++i) {
      StencilData s;
      s.dx = dx;
      s.dy = dy;
      for (int c = 0; c < 13; ++c) {
        const auto [di, dj] = kStencilOffsets[c];
        s.u[c] = field.Hsig[field.idx(i + di, j + dj)];
      }
      const Poly hp = fit_p3_central(s);
      double* be = &bathy_edge_[cell_index(i, j) * 12];
      double* bv = &bathy_vol_[cell_index(i, j) * 9];
      for (int l = 0; l < k; ++l) {
        const double yl = gr.node[l] * dy, xl = gr.node[l] * dx;
        be[0 * 3 + l] = evaluate(hp, -0.5 * dx, yl) / row.sigma_qp[l];
        be[1 * 3 + l] = evaluate(hp, 0.5 * dx, yl) / row.sigma_qp[l];
        be[2 * 3 + l] = evaluate(hp, xl, -0.5 * dy) / row.sigma_s;
        be[3 * 3 + l] = evaluate(hp, xl, 0.5 * dy) / row.sigma_n;
      }
      for (int v = 0; v < kv; ++v) {
        const int lx = v % k, ly = v / k;
        bv[v] = evaluate(hp, gr.node[lx] * dx, gr.node[ly] * dy) /
                row.sigma_qp[ly];
      }
    }
  }
  bathy_ready_ = true;
}

CellReconstruction Solver::reconstruct_one(const StateField& field, int i,
                                           int j) const {
  const double dx = grid_.dx, dy = grid_.dy;
  const double sig_bar = field.sigma(j);
  const double abar = field.a[field.idx(i, j)];
  const double hbar = abar / sig_bar;

  CellReconstruction rec;
  rec.eta_bar = (abar - field.Hsig[field.idx(i, j)]) / sig_bar;

  if (hbar < cfg_.h_dry) {
    rec.a = flat_poly(abar, dx, dy);
    rec.m1 = flat_poly(0.0, dx, dy);
    rec.m2 = flat_poly(0.0, dx, dy);
    rec.f = flat_poly(0.0, dx, dy);
    rec.wet = false;
    return rec;
  }

  StencilData sa, sm1, sm2, sf;
  sa.dx = sm1.dx = sm2.dx = sf.dx = dx;
  sa.dy = sm1.dy = sm2.dy = sf.dy = dy;
  const FluctuationData fd = fluctuation_data(field, grid_, i, j);
  for (int c = 0; c < 13; ++c) {
    const auto [di, dj] = kStencilOffsets[c];
    const auto id = field.idx(i + di, j + dj);
    const bool wet = field.a[id] / field.sigma(j + dj) >= cfg_.h_dry;
    sa.u[c] = field.a[id];
    sm1.u[c] = field.m1[id];
    sm2.u[c] = field.m2[id];
    sf.u[c] = fd.f[c];
    sa.wet[c] = sm1.wet[c] = sm2.wet[c] = sf.wet[c] = wet;
  }

  const CwenoParams params = cfg_.cweno();
  rec.a = reconstruct_cell(sa, params);
  rec.m1 = reconstruct_cell(sm1, params);
  rec.m2 = reconstruct_cell(sm2, params);
  rec.f = reconstruct_cell(sf, params);
  rec.wet = true;

  // Positivity: the water depth seen by the scheme must stay >= h_dry at all
  // quadrature points, both through the direct water-column polynomial and
  // through the free-surface route eta_bar + f/sigma + H. One common theta
  // scales the deviations of all four polynomials, so cell averages and the
  // rest state are preserved.
  ensure_bathy(field);
  const GaussRule& gr = gauss_rule(cfg_.quad_edge());
  const int k = gr.n, kv = k * k;
  const RowGeom& row = rows_[j];
  const double* be = &bathy_edge_[cell_index(i, j) * 12];
  const double* bv = &bathy_vol_[cell_index(i, j) * 9];
  double theta = 1.0;
  auto visit = [&](double x, double y, double sig, double h_bathy) {
    const double h_direct = evaluate(rec.a, x, y) / sig;
    theta = std::min(theta, theta_for_point(hbar, h_direct, cfg_.h_dry));
    const double h_surface = rec.eta_bar + evaluate(rec.f, x, y) / sig + h_bathy;
    theta = std::min(
        theta, theta_for_point(rec.eta_bar + h_bathy, h_surface, cfg_.h_dry));
  };
  for (int l = 0; l < k; ++l) {
    const double yl = gr.node[l] * dy, xl = gr.node[l] * dx;
    visit(-0.5 * dx, yl, row.sigma_qp[l], be[0 * 3 + l]);
    visit(0.5 * dx, yl, row.sigma_qp[l], be[1 * 3 + l]);
    visit(xl, -0.5 * dy, row.sigma_s, be[2 * 3 + l]);
    visit(xl, 0.5 * dy, row.sigma_n, be[3 * 3 + l]);
  }
  for (int v = 0; v < kv; ++v)
    visit(gr.node[v % k] * dx, gr.node[v / k] * dy, row.sigma_qp[v / k], bv[v]);

  if (theta < 1.0) {
    scale_deviation(rec.a, theta);
    scale_deviation(rec.m1, theta);
    scale_deviation(rec.m2, theta);
    scale_deviation(rec.f, theta);
  }
  return rec;
}

std::vector<CellReconstruction> Solver::reconstruct_all(
    const StateField& field) const {
  ensure_bathy(field);
  std::vector<CellReconstruction> out(samples_.size());
  parallel_rows(grid_.ny, cfg_.threads, [&](int j) {
    for (int i = 0; i < grid_.nx; ++i)
      out[cell_index(i, j)] = reconstruct_one(field, i, j);
  });
  return out;
}

void Solver::sample_cell(const CellReconstruction& rec, int i, int j,
                         PointData& pd) const {
  const GaussRule& gr = gauss_rule(cfg_.quad_edge());
  const int k = gr.n, kv = k * k;
  const double dx = grid_.dx, dy = grid_.dy;
  const RowGeom& row = rows_[j];
  pd.wet = rec.wet;

  auto fill_edge = [&](int e, int l, double x, double y, double sig) {
    double a = evaluate(rec.a, x, y);
    double q1 = evaluate(rec.m1, x, y);
    double q2 = evaluate(rec.m2, x, y);
    const double eta = rec.eta_bar * sig + evaluate(rec.f, x, y);
    if (a < 0.0) a = 0.0;
    if (a < cfg_.h_dry * sig) {
      q1 = 0.0;
      q2 = 0.0;
    }
    pd.edge[e][l][0] = a;
    pd.edge[e][l][1] = q1;
    pd.edge[e][l][2] = q2;
    pd.edge[e][l][3] = eta;
  };
  for (int l = 0; l < k; ++l) {
    const double yl = gr.node[l] * dy, xl = gr.node[l] * dx;
    fill_edge(0, l, -0.5 * dx, yl, row.sigma_qp[l]);
    fill_edge(1, l, 0.5 * dx, yl, row.sigma_qp[l]);
    fill_edge(2, l, xl, -0.5 * dy, row.sigma_s);
    fill_edge(3, l, xl, 0.5 * dy, row.sigma_n);
  }
  for (int v = 0; v < kv; ++v) {
    const double x = gr.node[v % k] * dx, y = gr.node[v / k] * dy;
    const double sig = row.sigma_qp[v / k];
    double a = evaluate(rec.a, x, y);
    double q1 = evaluate(rec.m1, x, y);
    double q2 = evaluate(rec.m2, x, y);
    if (a < 0.0) a = 0.0;
    if (a < cfg_.h_dry * sig) {
      q1 = 0.0;
      q2 = 0.0;
    }
    const auto [fx, fy] = evaluate_gradient(rec.f, x, y);
    pd.vol[v][0] = a;
    pd.vol[v][1] = q1;
    pd.vol[v][2] = q2;
    pd.vol[v][3] = evaluate(rec.f, x, y);
    pd.vol[v][4] = fx;
    pd.vol[v][5] = fy;
  }
  (void)i;
}

void Solver::reconstruct_and_sample(const StateField& field) {
  ensure_bathy(field);
  parallel_rows(grid_.ny, cfg_.threads, [&](int j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const CellReconstruction rec = reconstruct_one(field, i, j);
      sample_cell(rec, i, j, samples_[cell_index(i, j)]);
    }
  });
}

void Solver::rhs_from_samples(const StateField& field,
                              std::vector<State>& rates) const {
  const GaussRule& gr = gauss_rule(cfg_.quad_edge());
  const int k = gr.n, kv = k * k;
  const double dx = grid_.dx, dy = grid_.dy;
  const double area = grid_.cell_area();
  const double g = cfg_.g;
  const int nx = grid_.nx, ny = grid_.ny;
  rates.resize(samples_.size());

  parallel_rows(ny, cfg_.threads, [&](int j) {
    const RowGeom& row = rows_[j];
    for (int i = 0; i < nx; ++i) {
      const PointData& pd = samples_[cell_index(i, j)];
      Vec3 acc{0.0, 0.0, 0.0};

      // Edge order W, E, S, N keeps the floating-point accumulation
      // deterministic.
      for (int e = 0; e < 4; ++e) {
        const Axis axis = e < 2 ? Axis::X : Axis::Y;
        const double sign = (e == 0 || e == 2) ? -1.0 : 1.0;
        const double edge_len = axis == Axis::X ? dy : dx;

        // Outer traces come from the neighbor's matching edge samples; at a
        // physical boundary they are synthesized from the inner trace.
        const PointData* nb = nullptr;
        int mirror = 0;  // 0 none, 1 negate m1, 2 negate m2
        bool open_copy = false;
        if (e == 0) {
          if (i > 0) nb = &samples_[cell_index(i - 1, j)];
          else if (bc_.west == BcType::Periodic) nb = &samples_[cell_index(nx - 1, j)];
          else if (bc_.west == BcType::Wall) mirror = 1;
          else open_copy = true;
        } else if (e == 1) {
          if (i < nx - 1) nb = &samples_[cell_index(i + 1, j)];
          else if (bc_.east == BcType::Periodic) nb = &samples_[cell_index(0, j)];
          else if (bc_.east == BcType::Wall) mirror = 1;
          else open_copy = true;
        } else if (e == 2) {
          if (j > 0) nb = &samples_[cell_index(i, j - 1)];
          else if (bc_.south == BcType::Periodic) nb = &samples_[cell_index(i, ny - 1)];
          else if (bc_.south == BcType::Wall) mirror = 2;
          else open_copy = true;
        } else {
          if (j < ny - 1) nb = &samples_[cell_index(i, j + 1)];
          else if (bc_.north == BcType::Periodic) nb = &samples_[cell_index(i, 0)];
          else if (bc_.north == BcType::Wall) mirror = 2;
          else open_copy = true;
        }
        const int nb_edge = nb ? (e ^ 1) : e;

        for (int l = 0; l < k; ++l) {
          const double* inner = pd.edge[e][l];
          double outer[4];
          if (nb) {
            const double* o = nb->edge[nb_edge][l];
            outer[0] = o[0];
            outer[1] = o[1];
            outer[2] = o[2];
            outer[3] = o[3];
          } else {
            outer[0] = inner[0];
            outer[1] = mirror == 1 ? -inner[1] : inner[1];
            outer[2] = mirror == 2 ? -inner[2] : inner[2];
            outer[3] = inner[3];
            (void)open_copy;
          }

          double sig = 1.0;
          if (spherical_)
            sig = axis == Axis::X ? row.sigma_qp[l]
                                  : (e == 2 ? row.sigma_s : row.sigma_n);

          const bool inner_dry = inner[0] < cfg_.h_dry * sig;
          const bool outer_dry = outer[0] < cfg_.h_dry * sig;
          if (inner_dry && outer_dry) continue;

          const EdgeGeometry eg = edge_geometry(spherical_, axis, sign, sig);
          // Momentum traces are dropped throughout the drying band, mirroring
          // the cell-average treatment: a film trace barely above the dry
          // threshold must not carry a finite momentum trace into the Riemann
          // problem, or the point velocity (and the wave speeds fed back into
          // the front) become unbounded.
          const double band = 1e3 * cfg_.h_dry * sig;
          const bool thin_in = inner[0] < band;
          const bool thin_out = outer[0] < band;
          const State win{inner[0], thin_in ? 0.0 : inner[1],
                          thin_in ? 0.0 : inner[2]};
          const State wout{outer[0], thin_out ? 0.0 : outer[1],
                           thin_out ? 0.0 : outer[2]};

          RiemannInput rin;
          rin.wl = rotate(win, eg.nu1, eg.nu2);
          rin.wr = rotate(wout, eg.nu1, eg.nu2);
          rin.etal = inner[3];
          rin.etar = outer[3];
          rin.g_eff = spherical_ ? g / sig : g;
          rin.h_dry = cfg_.h_dry * sig;
          const Fluctuation fl = hllc_fluctuation(rin);
          const Vec3 dm = unrotate(fl.dminus, eg.nu1, eg.nu2);

          const Vec3 fn = spherical_ ? flux_spherical(win, sig, axis)
                                     : flux_cartesian(win, axis);
          const double w = edge_len * gr.weight[l];
          acc[0] += w * (sign * fn[0] + eg.delta * dm[0]);
          acc[1] += w * (sign * fn[1] + eg.delta * dm[1]);
          acc[2] += w * (sign * fn[2] + eg.delta * dm[2]);
        }
      }

      // Volume terms: nonconservative pressure, plus the geometric sources in
      // spherical mode.
      for (int v = 0; v < kv; ++v) {
        const double beta = gr.weight[v % k] * gr.weight[v / k];
        const double sig = row.sigma_qp[v / k];
        const double a = pd.vol[v][0];
        const double fx = pd.vol[v][4], fy = pd.vol[v][5];
        double t1 = g * a / (sig * sig) * fx;
        double t2 = g * a / sig * fy;
        if (spherical_) {
          const State w{a, pd.vol[v][1], pd.vol[v][2]};
          const Vec3 gs = geometric_source(w, sig, pd.vol[v][3], g);
          const double dsig = -row.sin_qp[v / k];
          t1 += dsig * gs[1];
          t2 += dsig * gs[2];
        }
        acc[1] += area * beta * t1;
        acc[2] += area * beta * t2;
      }

      const double scale = -1.0 / (grid_.radius * area);
      State& r = rates[cell_index(i, j)];
      r.a = scale * acc[0];
      r.m1 = scale * acc[1];
      r.m2 = scale * acc[2];
    }
  });
  (void)field;
}

void Solver::semidiscrete_rhs(const StateField& field,
                              std::vector<State>& rates) {
  reconstruct_and_sample(field);
  rhs_from_samples(field, rates);
}

double Solver::stable_dt(const StateField& field) const {
  const double g = cfg_.g;
  double dt = std::numeric_limits<double>::max();
  bool any_wet = false;
  for (int j = 0; j < grid_.ny; ++j) {
    const double sig = field.sigma(j);
    for (int i = 0; i < grid_.nx; ++i) {
      const auto id = field.idx(i, j);
      const double a = field.a[id];
      const double h = a / sig;
      if (h < cfg_.h_dry) continue;
      any_wet = true;
      const double u1 = std::abs(field.m1[id] / a);
      const double u2 = std::abs(field.m2[id] / a);
      const double c = std::sqrt(g * h);
      const double denom = (u1 + c) * grid_.dy + (u2 + c) * grid_.dx;
      if (denom <= 0.0) continue;
      dt = std::min(dt, grid_.radius * grid_.dx * grid_.dy * sig / denom);
    }
  }
  if (!any_wet) throw std::runtime_error("stable_dt: all cells are dry");
  return cfg_.cfl * dt;
}

void Solver::stage_postprocess(StateField& field, StepLog& log) const {
  for (int j = 0; j < grid_.ny; ++j) {
    const double sig = field.sigma(j);
    for (int i = 0; i < grid_.nx; ++i) {
      const auto id = field.idx(i, j);
      if (field.a[id] < 0.0) {
        field.a[id] = 0.0;
        ++log.clamp_events;
      }
      // Momentum is dropped throughout the drying band, not just below the
      // dry threshold itself: films a few orders of magnitude above h_dry
      // carry truncation-level momentum, and the quotient u = q/h would feed
      // arbitrarily large wave speeds back into the front.
      if (field.a[id] / sig < 1e3 * cfg_.h_dry) {
        field.m1[id] = 0.0;
        field.m2[id] = 0.0;
      }
      if (!std::isfinite(field.a[id]) || !std::isfinite(field.m1[id]) ||
          !std::isfinite(field.m2[id]))
        throw std::runtime_error("solver: non-finite state in cell (" +
                                 std::to_string(i) + ", " + std::to_string(j) +
                                 ")");
    }
  }
  fill_ghosts(field, grid_, bc_);
}

void Solver::ssp_rk3_step(StateField& field, double dt, StepLog& log) {
  const int nx = grid_.nx, ny = grid_.ny;

  semidiscrete_rhs(field, stage_rate_);
  stage1_ = field;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto id = field.idx(i, j);
      const State& r = stage_rate_[cell_index(i, j)];
      stage1_.a[id] = field.a[id] + dt * r.a;
      stage1_.m1[id] = field.m1[id] + dt * r.m1;
      stage1_.m2[id] = field.m2[id] + dt * r.m2;
    }
  stage_postprocess(stage1_, log);

  semidiscrete_rhs(stage1_, stage_rate_);
  stage2_ = field;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto id = field.idx(i, j);
      const State& r = stage_rate_[cell_index(i, j)];
      stage2_.a[id] = 0.75 * field.a[id] + 0.25 * (stage1_.a[id] + dt * r.a);
      stage2_.m1[id] =
          0.75 * field.m1[id] + 0.25 * (stage1_.m1[id] + dt * r.m1);
      stage2_.m2[id] =
          0.75 * field.m2[id] + 0.25 * (stage1_.m2[id] + dt * r.m2);
    }
  stage_postprocess(stage2_, log);

  semidiscrete_rhs(stage2_, stage_rate_);
  const double c13 = 1.0 / 3.0, c23 = 2.0 / 3.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto id = field.idx(i, j);
      const State& r = stage_rate_[cell_index(i, j)];
      field.a[id] = c13 * field.a[id] + c23 * (stage2_.a[id] + dt * r.a);
      field.m1[id] = c13 * field.m1[id] + c23 * (stage2_.m1[id] + dt * r.m1);
      field.m2[id] = c13 * field.m2[id] + c23 * (stage2_.m2[id] + dt * r.m2);
    }
  stage_postprocess(field, log);
  ++log.steps;
}

StepLog Solver::advance_to(StateField& field, double t_end,
                           const std::vector<Observer>& observers) {
  StepLog log;
  fill_ghosts(field, grid_, bc_);
  double t = 0.0;
  for (const auto& obs : observers) obs(t, field);
  while (t < t_end) {
    if (log.steps >= cfg_.max_steps)
      throw std::runtime_error("solver: step budget exhausted at t = " +
                               std::to_string(t));
    double dt = stable_dt(field);
    if (!(dt > 0.0)) dt = t_end - t;
    if (t + dt >= t_end) {
      dt = t_end - t;
      t = t_end;
    } else {
      t += dt;
    }
    ssp_rk3_step(field, dt, log);
    for (const auto& obs : observers) obs(t, field);
  }
  return log;
}

double l1_error(const StateField& field, const StateField& reference,
                const Grid& grid, int component) {
  const std::vector<double>* f = nullptr;
  const std::vector<double>* r = nullptr;
  switch (component) {
    case 0: f = &field.a; r = &reference.a; break;
    case 1: f = &field.m1; r = &reference.m1; break;
    default: f = &field.m2; r = &reference.m2; break;
  }
  double sum = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto id = field.idx(i, j);
      sum += std::abs((*f)[id] - (*r)[id]);
    }
  return sum * grid.cell_area();
}

}  // namespace swe
