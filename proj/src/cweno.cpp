#include "swe/cweno.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swe {

namespace {

int space_dim(int degree) {
  switch (degree) {
    case 1: return 2;
    case 2: return 5;
    default: return 9;
  }
}

}  // namespace

Poly fit_least_squares(std::span<const std::pair<int, int>> offsets, int degree,
                       std::span<const double> u, double u0, double dx,
                       double dy) {
  const int m = space_dim(degree);
  const int n = static_cast<int>(offsets.size());
  if (n < m) throw std::runtime_error("fit_least_squares: not enough cells");

  Eigen::MatrixXd A(n, m);
  Eigen::VectorXd b(n);
  for (int j = 0; j < n; ++j) {
    const auto [di, dj] = offsets[j];
    for (int k = 0; k < m; ++k)
      A(j, k) = basis_cell_average(k + 1, di, dj, dx, dy);
    b(j) = u[j] - u0;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < m)
    throw std::runtime_error("fit_least_squares: rank-deficient stencil");
  Eigen::VectorXd c = qr.solve(b);

  Poly p;
  p.degree = degree;
  p.dx = dx;
  p.dy = dy;
  p.c[0] = u0;
  for (int k = 0; k < m; ++k) p.c[k + 1] = c(k);
  return p;
}

Poly fit_p2_central(const StencilData& s) {
  const auto& u = s.u;
  const double dx = s.dx, dy = s.dy;
  Poly p;
  p.degree = 2;
  p.dx = dx;
  p.dy = dy;
  p.c[0] = u[0];
  p.c[1] = ((u[3] - u[1]) + (u[5] - u[4]) + (u[8] - u[6])) / (6.0 * dx);
  p.c[2] = ((u[1] - u[6]) + (u[2] - u[7]) + (u[3] - u[8])) / (6.0 * dy);
  p.c[3] = ((u[1] - 2.0 * u[2] + u[3]) + 3.0 * (u[4] - 2.0 * u[0] + u[5]) +
            (u[6] - 2.0 * u[7] + u[8])) /
           (10.0 * dx * dx);
  p.c[4] = ((u[1] - 2.0 * u[4] + u[6]) + 3.0 * (u[2] - 2.0 * u[0] + u[7]) +
            (u[3] - 2.0 * u[5] + u[8])) /
           (10.0 * dy * dy);
  p.c[5] = ((u[3] - u[1]) - (u[8] - u[6])) / (4.0 * dx * dy);
  return p;
}

Poly fit_p3_central(const StencilData& s) {
  const auto& u = s.u;
  const double dx = s.dx, dy = s.dy;
  Poly p;
  p.degree = 3;
  p.dx = dx;
  p.dy = dy;
  p.c[0] = u[0];
  p.c[1] = (36.0 * (u[5] - u[4]) - 5.0 * (u[11] - u[10]) - (u[8] - u[6]) -
            (u[3] - u[1])) /
           (48.0 * dx);
  p.c[2] = (36.0 * (u[2] - u[7]) - 5.0 * (u[9] - u[12]) - (u[1] - u[6]) -
            (u[3] - u[8])) /
           (48.0 * dy);
  p.c[3] = (76.0 * (u[11] - 2.0 * u[0] + u[10]) + 19.0 * (u[5] - 2.0 * u[0] + u[4]) +
            17.0 * (u[3] - 2.0 * u[2] + u[1]) + 17.0 * (u[6] - 2.0 * u[7] + u[8]) +
            32.0 * (u[2] - 2.0 * u[0] + u[7]) - 8.0 * (u[9] - 2.0 * u[0] + u[12])) /
           (714.0 * dx * dx);
  p.c[4] = (76.0 * (u[9] - 2.0 * u[0] + u[12]) + 19.0 * (u[2] - 2.0 * u[0] + u[7]) +
            17.0 * (u[1] - 2.0 * u[4] + u[6]) + 17.0 * (u[3] - 2.0 * u[5] + u[8]) +
            32.0 * (u[4] - 2.0 * u[0] + u[5]) - 8.0 * (u[10] - 2.0 * u[0] + u[11])) /
           (714.0 * dy * dy);
  p.c[5] = ((u[3] - u[1]) - (u[8] - u[6])) / (4.0 * dx * dy);
  p.c[6] = ((u[11] - u[10]) - 2.0 * (u[5] - u[4])) / (12.0 * dx * dx * dx);
  p.c[7] = ((u[9] - u[12]) - 2.0 * (u[2] - u[7])) / (12.0 * dy * dy * dy);
  p.c[8] = ((u[3] - u[1]) - 2.0 * (u[5] - u[4]) + (u[8] - u[6])) /
           (4.0 * dx * dy * dy);
  p.c[9] = ((u[1] - u[6]) - 2.0 * (u[2] - u[7]) + (u[3] - u[8])) /
           (4.0 * dx * dx * dy);
  return p;
}

Poly fit_p1_sector(int r, const StencilData& s) {
  const auto& u = s.u;
  const double dx = s.dx, dy = s.dy;
  Poly p;
  p.degree = 1;
  p.dx = dx;
  p.dy = dy;
  p.c[0] = u[0];
  switch (r) {
    case 1:
      p.c[1] = ((u[3] - u[2]) + 2.0 * (u[5] - u[0])) / (3.0 * dx);
      p.c[2] = ((u[3] - u[5]) + 2.0 * (u[2] - u[0])) / (3.0 * dy);
      break;
    case 2:
      p.c[1] = ((u[8] - u[7]) + 2.0 * (u[5] - u[0])) / (3.0 * dx);
      p.c[2] = ((u[5] - u[8]) + 2.0 * (u[0] - u[7])) / (3.0 * dy);
      break;
    case 3:
      p.c[1] = ((u[7] - u[6]) + 2.0 * (u[0] - u[4])) / (3.0 * dx);
      p.c[2] = ((u[4] - u[6]) + 2.0 * (u[0] - u[7])) / (3.0 * dy);
      break;
    default:
      p.c[1] = ((u[2] - u[1]) + 2.0 * (u[0] - u[4])) / (3.0 * dx);
      p.c[2] = ((u[1] - u[4]) + 2.0 * (u[2] - u[0])) / (3.0 * dy);
      break;
  }
  return p;
}

Poly fit_p2_sector(int r, const StencilData& s) {
  const auto& u = s.u;
  const double dx = s.dx, dy = s.dy;
  Poly p;
  p.degree = 2;
  p.dx = dx;
  p.dy = dy;
  p.c[0] = u[0];
  // Each sector system is exactly determined (five cells, five coefficients).
  // Derived from the interpolation conditions; two of the printed table
  // entries are misprints and are not reproduced here.
  switch (r) {
    case 1:
      p.c[1] = (4.0 * (u[5] - u[0]) - (u[11] - u[0])) / (2.0 * dx);
      p.c[2] = (4.0 * (u[2] - u[0]) - (u[9] - u[0])) / (2.0 * dy);
      p.c[3] = (u[11] + u[0] - 2.0 * u[5]) / (2.0 * dx * dx);
      p.c[4] = (u[9] + u[0] - 2.0 * u[2]) / (2.0 * dy * dy);
      p.c[5] = ((u[3] - u[2]) - (u[5] - u[0])) / (dx * dy);
      break;
    case 2:
      p.c[1] = (4.0 * (u[5] - u[0]) - (u[11] - u[0])) / (2.0 * dx);
      p.c[2] = -(4.0 * (u[7] - u[0]) - (u[12] - u[0])) / (2.0 * dy);
      p.c[3] = (u[11] + u[0] - 2.0 * u[5]) / (2.0 * dx * dx);
      p.c[4] = (u[12] + u[0] - 2.0 * u[7]) / (2.0 * dy * dy);
      p.c[5] = ((u[5] - u[0]) - (u[8] - u[7])) / (dx * dy);
      break;
    case 3:
      p.c[1] = -(4.0 * (u[4] - u[0]) - (u[10] - u[0])) / (2.0 * dx);
      p.c[2] = -(4.0 * (u[7] - u[0]) - (u[12] - u[0])) / (2.0 * dy);
      p.c[3] = (u[10] + u[0] - 2.0 * u[4]) / (2.0 * dx * dx);
      p.c[4] = (u[12] + u[0] - 2.0 * u[7]) / (2.0 * dy * dy);
      p.c[5] = ((u[0] - u[4]) - (u[7] - u[6])) / (dx * dy);
      break;
    default:
      p.c[1] = -(4.0 * (u[4] - u[0]) - (u[10] - u[0])) / (2.0 * dx);
      p.c[2] = (4.0 * (u[2] - u[0]) - (u[9] - u[0])) / (2.0 * dy);
      p.c[3] = (u[10] + u[0] - 2.0 * u[4]) / (2.0 * dx * dx);
      p.c[4] = (u[9] + u[0] - 2.0 * u[2]) / (2.0 * dy * dy);
      p.c[5] = ((u[2] - u[0]) - (u[1] - u[4])) / (dx * dy);
      break;
  }
  return p;
}

Poly compute_p0(const Poly& p_opt, const std::array<Poly, 4>& sector_polys,
                double d0, double dr) {
  if (d0 == 0.0) throw std::runtime_error("compute_p0: d0 = 0");
  Poly p0 = p_opt;
  for (int k = 0; k < 10; ++k) {
    double acc = p_opt.c[k];
    for (const Poly& pr : sector_polys) acc -= dr * pr.c[k];
    p0.c[k] = acc / d0;
  }
  p0.c[0] = p_opt.c[0];  // all candidates share the central average
  return p0;
}

double smoothness_indicator(const Poly& p) {
  const double dx = p.dx, dy = p.dy;
  const double A = dx * dy;
  const double dx2 = dx * dx, dy2 = dy * dy;
  const auto& c = p.c;

  double I = A * (c[1] * c[1] + c[2] * c[2]);
  if (p.degree >= 2) {
    I += A * ((13.0 * dx2 + 12.0 * dy2) / 3.0 * c[3] * c[3] +
              (12.0 * dx2 + 13.0 * dy2) / 3.0 * c[4] * c[4] +
              13.0 / 12.0 * (dx2 + dy2) * c[5] * c[5]);
  }
  if (p.degree >= 3) {
    const double dx4 = dx2 * dx2, dy4 = dy2 * dy2;
    I += A * (dx2 / 2.0 * c[1] * c[6] + dy2 / 2.0 * c[2] * c[7] +
              dx2 * dy2 / 24.0 * (c[6] * c[8] + c[7] * c[9]) +
              (dx2 * c[2] * c[9] + dy2 * c[1] * c[8]) / 6.0 +
              3.0 / 80.0 * (1043.0 * dx4 + 2000.0 * dx2 * dy2 + 960.0 * dy4) *
                  c[6] * c[6] +
              3.0 / 80.0 * (960.0 * dx4 + 2000.0 * dx2 * dy2 + 1043.0 * dy4) *
                  c[7] * c[7] +
              (3120.0 * dx4 + 6260.0 * dx2 * dy2 + 3129.0 * dy4) / 720.0 *
                  c[8] * c[8] +
              (3129.0 * dx4 + 6260.0 * dx2 * dy2 + 3120.0 * dy4) / 720.0 *
                  c[9] * c[9]);
  }
  return I;
}

std::array<double, 5> nonlinear_weights(const std::array<double, 5>& indicators,
                                        const std::array<double, 5>& d,
                                        double eps) {
  std::array<double, 5> alpha{};
  double sum = 0.0;
  for (int r = 0; r < 5; ++r) {
    if (d[r] == 0.0) continue;
    const double denom = indicators[r] + eps;
    alpha[r] = d[r] / (denom * denom);
    sum += alpha[r];
  }
  std::array<double, 5> w{};
  for (int r = 0; r < 5; ++r) w[r] = alpha[r] / sum;
  return w;
}

Poly reconstruct_cell(const StencilData& s, const CwenoParams& params) {
  if (!s.wet[0]) return flat_poly(s.u[0], s.dx, s.dy);

  const bool fourth = params.variant != Variant::P2P1;
  const int n_stencil = fourth ? 13 : 9;

  bool all_wet = true;
  for (int j = 0; j < n_stencil; ++j) all_wet = all_wet && s.wet[j];

  std::array<double, 5> d{};
  d[0] = all_wet ? params.d0 : 0.0;
  const bool p2_sectors = params.variant == Variant::P3P2;
  for (int r = 1; r <= 4; ++r) {
    bool sector_wet = true;
    if (p2_sectors) {
      for (int j : kSectorCellsP2[r - 1]) sector_wet = sector_wet && s.wet[j];
    } else {
      for (int j : kSectorCellsP1[r - 1]) sector_wet = sector_wet && s.wet[j];
    }
    d[r] = sector_wet ? params.dr : 0.0;
  }

  double dsum = d[0] + d[1] + d[2] + d[3] + d[4];
  if (dsum == 0.0) return flat_poly(s.u[0], s.dx, s.dy);
  for (double& v : d) v /= dsum;

  std::array<Poly, 4> sector{};
  for (int r = 1; r <= 4; ++r) {
    if (d[r] == 0.0 && d[0] == 0.0) continue;  // unused candidate
    sector[r - 1] = p2_sectors ? fit_p2_sector(r, s) : fit_p1_sector(r, s);
  }

  Poly p0;
  if (d[0] > 0.0) {
    const Poly p_opt = fourth ? fit_p3_central(s) : fit_p2_central(s);
    p0 = compute_p0(p_opt, sector, params.d0, params.dr);
  }

  std::array<double, 5> ind{};
  if (d[0] > 0.0) ind[0] = smoothness_indicator(p0);
  for (int r = 1; r <= 4; ++r)
    if (d[r] > 0.0) ind[r] = smoothness_indicator(sector[r - 1]);

  const double eps = eps_of(params, s.dx, s.dy);
  const auto w = nonlinear_weights(ind, d, eps);

  Poly rec;
  rec.dx = s.dx;
  rec.dy = s.dy;
  rec.degree = 0;
  if (w[0] > 0.0) {
    for (int k = 0; k < 10; ++k) rec.c[k] = w[0] * p0.c[k];
    rec.degree = p0.degree;
  }
  for (int r = 1; r <= 4; ++r) {
    if (w[r] == 0.0) continue;
    for (int k = 0; k < 10; ++k) rec.c[k] += w[r] * sector[r - 1].c[k];
    rec.degree = std::max(rec.degree, sector[r - 1].degree);
  }
  rec.c[0] = s.u[0];
  return rec;
}

double positivity_theta(double u0, std::span<const double> point_values,
                        double h_dry) {
  double vmin = u0;
  for (double v : point_values) vmin = std::min(vmin, v);
  if (vmin >= h_dry) return 1.0;
  if (u0 <= h_dry) return 0.0;
  return std::min(1.0, (u0 - h_dry) / (u0 - vmin));
}

Poly positivity_limit(const Poly& p, double u0,
                      std::span<const double> point_values, double h_dry) {
  const double theta = positivity_theta(u0, point_values, h_dry);
  if (theta == 1.0) return p;
  Poly q = p;
  q.c[0] = u0 + theta * (p.c[0] - u0);
  for (int k = 1; k < 10; ++k) q.c[k] = theta * p.c[k];
  if (theta == 0.0) q.degree = 0;
  return q;
}

}  // namespace swe
