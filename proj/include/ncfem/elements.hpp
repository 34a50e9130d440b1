#pragma once
#include "ncfem/geometry.hpp"
#include "ncfem/mesh.hpp"

namespace ncfem {

// Nonconforming P1 basis: shape_i = 1 - 2*lambda_i, dual to the mean over edge i
// (equivalently the midpoint value). Gradients are constant.
struct CRBasis {
  std::array<Vec2, 3> grad;
  static double value(int i, const std::array<double, 3>& lambda) {
    return 1.0 - 2.0 * lambda[i];
  }
};
CRBasis cr_basis(const TriGeom& g);

// Quadratic Morley basis. DOFs 0..2 are the vertex values, DOFs 3..5 the mean normal
// derivatives over the edges, signed with the mesh's global edge normals so that the
// two triangles at an edge see the same functional. Stored in the scaled monomial
// basis {1, X, Y, X^2, XY, Y^2} with X = (x - centroid)/diameter.
struct MorleyBasis {
  std::array<std::array<double, 6>, 6> coef;  // coef[i] = coefficients of shape i
  Point2 centroid;
  double scale = 1.0;

  double value(int i, const Point2& x) const;
  Vec2 gradient(int i, const Point2& x) const;
  Sym2 hessian(int i) const;  // constant: quadratic shapes
};
MorleyBasis morley_basis(const TriGeom& g);

// Lowest-order Raviart-Thomas basis, dual to the integral fluxes
//   DOF_i(q) = int_{e_i} q . nu_{e_i} ds  (global edge normals).
// shape_i = sign_i/(2|K|) (x - p_i); its divergence is the constant sign_i/|K|.
struct RT0Basis {
  std::array<double, 3> coef;
  std::array<Point2, 3> opposite;
  std::array<double, 3> div;
  Vec2 value(int i, const Point2& x) const { return coef[i] * (x - opposite[i]); }
};
RT0Basis rt0_basis(const TriGeom& g);

// Constant symmetric matrices with M_{nu_j nu_j}(shape_i) = delta_ij. The functionals
// are invariant under nu -> -nu, so normal orientation does not matter here.
struct HHJBasis {
  std::array<Sym2, 3> shape;
};
HHJBasis hhj_basis(const TriGeom& g);

}  // namespace ncfem
