#pragma once

#include <array>
#include <utility>

namespace swe {

// Bivariate polynomial of degree <= 3 in the zero-mean basis
//   phi0 = 1
//   phi1 = X            phi3 = X^2 - dx^2/12    phi6 = X^3   phi8 = X Y^2
//   phi2 = Y            phi4 = Y^2 - dy^2/12    phi7 = Y^3   phi9 = X^2 Y
//   phi5 = X Y
// with X = x - x0, Y = y - y0 anchored at the center of the owning cell.
// All non-constant basis functions have zero average over the anchor cell,
// so the cell average of the polynomial is c[0].
struct Poly {
  std::array<double, 10> c{};
  int degree = 0;
  double dx = 1.0, dy = 1.0;
  double x0 = 0.0, y0 = 0.0;
};

inline Poly flat_poly(double value, double dx, double dy, double x0 = 0.0,
                      double y0 = 0.0) {
  Poly p;
  p.c[0] = value;
  p.degree = 0;
  p.dx = dx;
  p.dy = dy;
  p.x0 = x0;
  p.y0 = y0;
  return p;
}

inline double evaluate(const Poly& p, double x, double y) {
  const double X = x - p.x0, Y = y - p.y0;
  double v = p.c[0] + p.c[1] * X + p.c[2] * Y;
  if (p.degree >= 2) {
    v += p.c[3] * (X * X - p.dx * p.dx / 12.0) +
         p.c[4] * (Y * Y - p.dy * p.dy / 12.0) + p.c[5] * X * Y;
  }
  if (p.degree >= 3) {
    v += p.c[6] * X * X * X + p.c[7] * Y * Y * Y + p.c[8] * X * Y * Y +
         p.c[9] * X * X * Y;
  }
  return v;
}

inline std::pair<double, double> evaluate_gradient(const Poly& p, double x,
                                                   double y) {
  const double X = x - p.x0, Y = y - p.y0;
  double gx = p.c[1], gy = p.c[2];
  if (p.degree >= 2) {
    gx += 2.0 * p.c[3] * X + p.c[5] * Y;
    gy += 2.0 * p.c[4] * Y + p.c[5] * X;
  }
  if (p.degree >= 3) {
    gx += 3.0 * p.c[6] * X * X + p.c[8] * Y * Y + 2.0 * p.c[9] * X * Y;
    gy += 3.0 * p.c[7] * Y * Y + 2.0 * p.c[8] * X * Y + p.c[9] * X * X;
  }
  return {gx, gy};
}

// Average of basis function k over the cell offset by (di, dj) cells from the
// anchor cell, on a uniform grid with spacings (dx, dy).
inline double basis_cell_average(int k, int di, int dj, double dx, double dy) {
  const double X = di * dx, Y = dj * dy;
  switch (k) {
    case 0: return 1.0;
    case 1: return X;
    case 2: return Y;
    case 3: return X * X;                          // the -dx^2/12 shift cancels
    case 4: return Y * Y;
    case 5: return X * Y;
    case 6: return X * X * X + X * dx * dx / 4.0;
    case 7: return Y * Y * Y + Y * dy * dy / 4.0;
    case 8: return X * (Y * Y + dy * dy / 12.0);
    case 9: return (X * X + dx * dx / 12.0) * Y;
    default: return 0.0;
  }
}

}  // namespace swe
