#pragma once
#include <array>
#include <stdexcept>
#include <vector>

#include "ncfem/geometry.hpp"

namespace ncfem {

// Quadrature on the reference triangle, stored in barycentric coordinates.
// Weights sum to 1/2 (the reference area), so for an affine triangle K
//   int_K f dx = 2|K| * sum_i w_i f(x_i).
struct QuadratureRule {
  struct Node {
    std::array<double, 3> lambda;
    double weight;
  };
  std::vector<Node> nodes;
  int degree = 0;
};

// Symmetric rules: degrees 1..4 and 6 are the classical low-point-count rules
// (3-midpoint for 2, the 4-point Strang rule with negative centroid weight for 3,
// Dunavant 6-point and 12-point for 4 and 6); degree 8 is the Dunavant 16-point
// rule, used only to cross-check that degree 6 already integrates the polynomial
// right-hand sides exactly. Unsupported degrees throw.
const QuadratureRule& triangle_quadrature(int degree);

// Gauss-Legendre on [0,1]; weights sum to 1. npoints in {2, 4} (degrees 3 and 7).
struct EdgeQuadratureRule {
  struct Node {
    double s;
    double weight;
  };
  std::vector<Node> nodes;
  int degree = 0;
};
const EdgeQuadratureRule& edge_quadrature(int npoints);

}  // namespace ncfem
