#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "swe/poly.hpp"
#include "swe/quadrature.hpp"

using namespace swe;

namespace {

// Numerical cell average of fn over the cell offset by (di, dj), 3x3 Gauss
// (exact for the degree <= 3 basis).
template <class F>
double quad_average(F&& fn, int di, int dj, double dx, double dy) {
  const GaussRule& gr = gauss_rule(3);
  double sum = 0.0;
  for (int ly = 0; ly < 3; ++ly)
    for (int lx = 0; lx < 3; ++lx)
      sum += gr.weight[lx] * gr.weight[ly] *
             fn(di * dx + gr.node[lx] * dx, dj * dy + gr.node[ly] * dy);
  return sum;
}

double basis_value(int k, double X, double Y, double dx, double dy) {
  switch (k) {
    case 0: return 1.0;
    case 1: return X;
    case 2: return Y;
    case 3: return X * X - dx * dx / 12.0;
    case 4: return Y * Y - dy * dy / 12.0;
    case 5: return X * Y;
    case 6: return X * X * X;
    case 7: return Y * Y * Y;
    case 8: return X * Y * Y;
    default: return X * X * Y;
  }
}

}  // namespace

TEST_CASE("basis functions have zero mean over the anchor cell") {
  for (int k = 1; k < 10; ++k) {
    CHECK(basis_cell_average(k, 0, 0, 0.7, 1.3) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(quad_average([&](double X, double Y) {
            return basis_value(k, X, Y, 0.7, 1.3);
          }, 0, 0, 0.7, 1.3)) < 1e-14);
  }
}

TEST_CASE("basis_cell_average matches quadrature on offset cells") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> spacing(0.1, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double dx = spacing(rng), dy = spacing(rng);
    for (int k = 0; k < 10; ++k)
      for (int dj = -2; dj <= 2; ++dj)
        for (int di = -2; di <= 2; ++di) {
          const double exact = basis_cell_average(k, di, dj, dx, dy);
          const double numeric = quad_average([&](double X, double Y) {
            return basis_value(k, X, Y, dx, dy);
          }, di, dj, dx, dy);
          CHECK(exact == doctest::Approx(numeric).epsilon(1e-12).scale(1.0));
        }
  }
}

TEST_CASE("evaluate matches the basis expansion and the gradient is exact") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p;
    p.degree = 3;
    p.dx = 0.8;
    p.dy = 1.1;
    p.x0 = coef(rng);
    p.y0 = coef(rng);
    for (int k = 0; k < 10; ++k) p.c[k] = coef(rng);

    const double x = p.x0 + coef(rng), y = p.y0 + coef(rng);
    double direct = 0.0;
    for (int k = 0; k < 10; ++k)
      direct += p.c[k] * basis_value(k, x - p.x0, y - p.y0, p.dx, p.dy);
    CHECK(evaluate(p, x, y) == doctest::Approx(direct).epsilon(1e-13));

    const double eps = 1e-6;
    const auto [gx, gy] = evaluate_gradient(p, x, y);
    const double fdx = (evaluate(p, x + eps, y) - evaluate(p, x - eps, y)) / (2 * eps);
    const double fdy = (evaluate(p, x, y + eps) - evaluate(p, x, y - eps)) / (2 * eps);
    CHECK(gx == doctest::Approx(fdx).epsilon(1e-6).scale(1.0));
    CHECK(gy == doctest::Approx(fdy).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("cell average of a polynomial equals c[0]") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Poly p;
  p.degree = 3;
  p.dx = 0.9;
  p.dy = 0.4;
  for (int k = 0; k < 10; ++k) p.c[k] = coef(rng);
  const double avg = quad_average([&](double X, double Y) {
    return evaluate(p, X, Y);
  }, 0, 0, p.dx, p.dy);
  CHECK(avg == doctest::Approx(p.c[0]).epsilon(1e-13));
}

TEST_CASE("flat_poly is constant with zero gradient") {
  const Poly p = flat_poly(3.25, 0.5, 0.5);
  CHECK(evaluate(p, 0.2, -0.1) == 3.25);
  const auto [gx, gy] = evaluate_gradient(p, 0.2, -0.1);
  CHECK(gx == 0.0);
  CHECK(gy == 0.0);
}

TEST_CASE("gauss rules integrate polynomials at their design order") {
  // n-point Gauss on [-1/2, 1/2] is exact through degree 2n-1.
  for (int n = 1; n <= 3; ++n) {
    const GaussRule& gr = gauss_rule(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double sum = 0.0;
      for (int l = 0; l < gr.n; ++l)
        sum += gr.weight[l] * std::pow(gr.node[l], deg);
      const double exact =
          deg % 2 == 1 ? 0.0 : std::pow(0.5, deg) / (deg + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
    }
  }
}
