#pragma once

#include <array>
#include <cstddef>

namespace swe {

// Gauss-Legendre rules on the reference interval [-1/2, 1/2], weights
// normalized to sum to 1 (multiply by the interval length to integrate).
struct GaussRule {
  int n = 0;
  std::array<double, 3> node{};
  std::array<double, 3> weight{};
};

inline const GaussRule& gauss_rule(int n) {
  static const GaussRule g1{1, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  static const GaussRule g2{2,
                            {-0.28867513459481288225, 0.28867513459481288225, 0.0},
                            {0.5, 0.5, 0.0}};
  static const GaussRule g3{3,
                            {-0.38729833462074168852, 0.0, 0.38729833462074168852},
                            {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}};
  switch (n) {
    case 1: return g1;
    case 2: return g2;
    default: return g3;
  }
}

}  // namespace swe
