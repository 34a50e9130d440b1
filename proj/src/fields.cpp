#include "ncfem/fields.hpp"

namespace ncfem {

double CRFunction::value(int t, const Point2& x) const {
  const auto lam = mesh->geom[t].barycentric(x);
  double v = 0.0;
  for (int i = 0; i < 3; ++i)
    v += edge_dofs[mesh->triangles[t].edge_ids[i]] * (1.0 - 2.0 * lam[i]);
  return v;
}

Vec2 CRFunction::gradient(int t) const {
  const CRBasis b = cr_basis(mesh->geom[t]);
  Vec2 g = {0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    g = g + edge_dofs[mesh->triangles[t].edge_ids[i]] * b.grad[i];
  return g;
}

std::vector<Vec2> nonconforming_gradients(const CRFunction& u) {
  std::vector<Vec2> g(u.mesh->num_triangles());
  for (int t = 0; t < u.mesh->num_triangles(); ++t) g[t] = u.gradient(t);
  return g;
}

namespace {
// local Morley DOF vector of a function: 3 vertex values, 3 edge values
std::array<double, 6> morley_local_dofs(const MorleyFunction& u, int t) {
  const auto& tri = u.mesh->triangles[t];
  return {u.vertex_dofs[tri.vertex_ids[0]], u.vertex_dofs[tri.vertex_ids[1]],
          u.vertex_dofs[tri.vertex_ids[2]], u.edge_dofs[tri.edge_ids[0]],
          u.edge_dofs[tri.edge_ids[1]],     u.edge_dofs[tri.edge_ids[2]]};
}
}  // namespace

double MorleyFunction::value(int t, const Point2& x) const {
  const MorleyBasis b = morley_basis(mesh->geom[t]);
  const auto d = morley_local_dofs(*this, t);
  double v = 0.0;
  for (int i = 0; i < 6; ++i) v += d[i] * b.value(i, x);
  return v;
}

Vec2 MorleyFunction::gradient(int t, const Point2& x) const {
  const MorleyBasis b = morley_basis(mesh->geom[t]);
  const auto d = morley_local_dofs(*this, t);
  Vec2 g = {0.0, 0.0};
  for (int i = 0; i < 6; ++i) g = g + d[i] * b.gradient(i, x);
  return g;
}

Sym2 MorleyFunction::hessian(int t) const {
  const MorleyBasis b = morley_basis(mesh->geom[t]);
  const auto d = morley_local_dofs(*this, t);
  Sym2 h;
  for (int i = 0; i < 6; ++i) h = h + d[i] * b.hessian(i);
  return h;
}

std::vector<Sym2> nonconforming_hessians(const MorleyFunction& u) {
  std::vector<Sym2> h(u.mesh->num_triangles());
  for (int t = 0; t < u.mesh->num_triangles(); ++t) h[t] = u.hessian(t);
  return h;
}

double P1Field::value(int t, const Point2& x) const {
  const auto lam = mesh->geom[t].barycentric(x);
  double v = 0.0;
  for (int i = 0; i < 3; ++i) v += vertex_values[mesh->triangles[t].vertex_ids[i]] * lam[i];
  return v;
}

Vec2 RTField::value(int t, const Point2& x) const {
  const RT0Basis b = rt0_basis(mesh->geom[t]);
  Vec2 v = {0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    v = v + edge_flux[mesh->triangles[t].edge_ids[i]] * b.value(i, x);
  return v;
}

double RTField::divergence(int t) const {
  const RT0Basis b = rt0_basis(mesh->geom[t]);
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d += edge_flux[mesh->triangles[t].edge_ids[i]] * b.div[i];
  return d;
}

Sym2 HHJField::matrix(int t) const {
  const HHJBasis b = hhj_basis(mesh->geom[t]);
  Sym2 s;
  for (int i = 0; i < 3; ++i) s = s + edge_mnn[mesh->triangles[t].edge_ids[i]] * b.shape[i];
  return s;
}

std::vector<Sym2> hhj_matrices(const HHJField& s) {
  std::vector<Sym2> m(s.mesh->num_triangles());
  for (int t = 0; t < s.mesh->num_triangles(); ++t) m[t] = s.matrix(t);
  return m;
}

}  // namespace ncfem
