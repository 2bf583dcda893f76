#pragma once

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "swe/poly.hpp"

namespace swe {

// Reconstruction variant: P2P1 is the third-order scheme, P3P1 and P3P2 the
// two fourth-order ones (central cubic with linear / quadratic sectors).
enum class Variant { P2P1, P3P1, P3P2 };

enum class EpsLaw { H, H2, Constant };

struct CwenoParams {
  Variant variant = Variant::P2P1;
  double d0 = 0.75;
  double dr = 0.0625;  // shared by the four sector polynomials
  EpsLaw eps_law = EpsLaw::H2;
  double eps_const = 1e-6;
  double h_dry = 1e-8;
};

// The 13 cell averages of the diamond stencil, numbered as
//          9
//      1   2   3
//  10  4   0   5   11
//      6   7   8
//         12
// Index 0 is the cell being reconstructed. The P2P1 variant only reads
// cells 0..8.
struct StencilData {
  std::array<double, 13> u{};
  std::array<bool, 13> wet{true, true, true, true, true, true, true,
                           true, true, true, true, true, true};
  double dx = 1.0, dy = 1.0;
};

// (di, dj) offsets of the stencil cells in the numbering above.
inline constexpr std::array<std::pair<int, int>, 13> kStencilOffsets{{
    {0, 0},  {-1, 1}, {0, 1},  {1, 1},  {-1, 0}, {1, 0}, {-1, -1},
    {0, -1}, {1, -1}, {0, 2},  {-2, 0}, {2, 0},  {0, -2},
}};

// Sector substencils (cell indices, excluding the central cell whose average
// is matched exactly). r = 1..4 runs NE, SE, SW, NW.
inline constexpr std::array<std::array<int, 3>, 4> kSectorCellsP1{{
    {2, 3, 5}, {5, 7, 8}, {4, 6, 7}, {1, 2, 4}}};
inline constexpr std::array<std::array<int, 5>, 4> kSectorCellsP2{{
    {2, 3, 5, 9, 11}, {5, 7, 8, 11, 12}, {4, 6, 7, 10, 12}, {1, 2, 4, 9, 10}}};

// Constrained least-squares fit: the polynomial matches u0 exactly on the
// anchor cell and fits the given cell averages in the least-squares sense.
// Runtime fallback and oracle for the closed-form fits below.
// Throws std::runtime_error on a rank-deficient system.
Poly fit_least_squares(std::span<const std::pair<int, int>> offsets, int degree,
                       std::span<const double> u, double u0, double dx,
                       double dy);

Poly fit_p2_central(const StencilData& s);
Poly fit_p3_central(const StencilData& s);
Poly fit_p1_sector(int r, const StencilData& s);
Poly fit_p2_sector(int r, const StencilData& s);

// P0 = (P_opt - sum_r d_r P_r) / d0, coefficientwise.
Poly compute_p0(const Poly& p_opt, const std::array<Poly, 4>& sector_polys,
                double d0, double dr);

// Jiang-Shu indicator I[P] = sum_{1<=|alpha|<=deg} h^(2|alpha|-2)
// \iint (d_alpha P)^2 over the anchor cell, h = sqrt(dx^2+dy^2),
// evaluated as an exact quadratic form in the coefficients.
double smoothness_indicator(const Poly& p);

std::array<double, 5> nonlinear_weights(const std::array<double, 5>& indicators,
                                        const std::array<double, 5>& d,
                                        double eps);

// Full CWENO pipeline with wet/dry stencil masking.
Poly reconstruct_cell(const StencilData& s, const CwenoParams& params);

// Zhang-Shu style linear scaling about the cell average so that the water
// column stays >= h_dry at every scheme quadrature point.
Poly positivity_limit(const Poly& p, double u0,
                      std::span<const double> point_values, double h_dry);

// theta such that u0 + theta*(v - u0) >= h_dry for all v in point_values.
double positivity_theta(double u0, std::span<const double> point_values,
                        double h_dry);

inline double eps_of(const CwenoParams& params, double dx, double dy) {
  const double h2 = dx * dx + dy * dy;
  switch (params.eps_law) {
    case EpsLaw::H: return std::sqrt(h2);
    case EpsLaw::H2: return h2;
    default: return params.eps_const;
  }
}

}  // namespace swe
