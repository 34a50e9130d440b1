#pragma once
#include <functional>
#include <vector>

#include "ncfem/elements.hpp"
#include "ncfem/mesh.hpp"

namespace ncfem {

// Generic per-triangle-evaluable fields; the first argument is the triangle index.
// This is the common currency between the solvers, the recovery operator and the
// error norms: piecewise gradients, mixed stresses and recovered fields all fit.
using PiecewiseScalarField = std::function<double(int, const Point2&)>;
using PiecewiseVectorField = std::function<Vec2(int, const Point2&)>;
using PiecewiseMatrixField = std::function<Sym2(int, const Point2&)>;

// Edge-midpoint DOFs; boundary entries stay zero (edge means vanish on the boundary).
struct CRFunction {
  const Mesh* mesh = nullptr;
  std::vector<double> edge_dofs;  // one per edge

  double value(int t, const Point2& x) const;
  Vec2 gradient(int t) const;  // constant per triangle
};
std::vector<Vec2> nonconforming_gradients(const CRFunction& u);

// Vertex values plus edge normal-derivative means (global normals); boundary DOFs
// stay zero.
struct MorleyFunction {
  const Mesh* mesh = nullptr;
  std::vector<double> vertex_dofs;  // one per vertex
  std::vector<double> edge_dofs;    // one per edge

  double value(int t, const Point2& x) const;
  Vec2 gradient(int t, const Point2& x) const;
  Sym2 hessian(int t) const;  // constant per triangle
};
std::vector<Sym2> nonconforming_hessians(const MorleyFunction& u);

template <class V>
struct P0Data {
  const Mesh* mesh = nullptr;
  std::vector<V> values;  // one per triangle
};
using P0Field = P0Data<double>;

// Continuous piecewise linears vanishing on the boundary.
struct P1Field {
  const Mesh* mesh = nullptr;
  std::vector<double> vertex_values;  // one per vertex; boundary entries zero

  double value(int t, const Point2& x) const;
};

// H(div) field with integral normal-flux DOFs int_e q . nu_e ds (global normals).
struct RTField {
  const Mesh* mesh = nullptr;
  std::vector<double> edge_flux;  // one per edge

  Vec2 value(int t, const Point2& x) const;
  double divergence(int t) const;  // constant per triangle
};

// Piecewise-constant symmetric matrices with single-valued normal-normal trace;
// one M_{nu nu} value per edge (orientation-free).
struct HHJField {
  const Mesh* mesh = nullptr;
  std::vector<double> edge_mnn;

  Sym2 matrix(int t) const;
};
std::vector<Sym2> hhj_matrices(const HHJField& s);

// One value per edge midpoint; per triangle the unique linear through its three
// midpoint values (coefficients on the nonconforming P1 shapes).
template <class V>
struct MidpointData {
  const Mesh* mesh = nullptr;
  std::vector<V> edge_values;

  V value(int t, const Point2& x) const {
    const TriGeom& g = mesh->geom[t];
    const auto lam = g.barycentric(x);
    V out = (1.0 - 2.0 * lam[0]) * edge_values[mesh->triangles[t].edge_ids[0]];
    out = out + (1.0 - 2.0 * lam[1]) * edge_values[mesh->triangles[t].edge_ids[1]];
    out = out + (1.0 - 2.0 * lam[2]) * edge_values[mesh->triangles[t].edge_ids[2]];
    return out;
  }
};
using MidpointVectorField = MidpointData<Vec2>;
using MidpointMatrixField = MidpointData<Sym2>;

}  // namespace ncfem
