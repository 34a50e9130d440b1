#include "ncfem/plate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ncfem/quadrature.hpp"

namespace ncfem {
namespace {

Point2 bary_point(const TriGeom& g, const std::array<double, 3>& lam) {
  return lam[0] * g.p[0] + lam[1] * g.p[1] + lam[2] * g.p[2];
}

std::vector<char> boundary_vertex_flags(const Mesh& m) {
  std::vector<char> bnd(m.num_vertices(), 0);
  for (const auto& e : m.edges)
    if (e.is_boundary) {
      bnd[e.vertex_ids[0]] = 1;
      bnd[e.vertex_ids[1]] = 1;
    }
  return bnd;
}

struct MorleyNumbering {
  std::vector<int> vertex_idx;  // -1 on the boundary
  std::vector<int> edge_idx;
  int ndof = 0;
};

MorleyNumbering number_morley_dofs(const Mesh& m) {
  MorleyNumbering n;
  const std::vector<char> bnd = boundary_vertex_flags(m);
  n.vertex_idx.assign(m.num_vertices(), -1);
  n.edge_idx.assign(m.num_edges(), -1);
  for (int v = 0; v < m.num_vertices(); ++v)
    if (!bnd[v]) n.vertex_idx[v] = n.ndof++;
  for (int e = 0; e < m.num_edges(); ++e)
    if (!m.edges[e].is_boundary) n.edge_idx[e] = n.ndof++;
  return n;
}

}  // namespace

MorleyFunction solve_morley(const Mesh& mesh, const ScalarFn& f, PlateRhs rhs_mode, double tol) {
  const MorleyNumbering num = number_morley_dofs(mesh);
  SparseSymMatrix A(num.ndof);
  std::vector<double> rhs(num.ndof, 0.0);
  const QuadratureRule& qr = triangle_quadrature(6);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeom& g = mesh.geom[t];
    const MorleyBasis b = morley_basis(g);
    const auto& tri = mesh.triangles[t];
    int gdof[6];
    for (int i = 0; i < 3; ++i) {
      gdof[i] = num.vertex_idx[tri.vertex_ids[i]];
      gdof[3 + i] = num.edge_idx[tri.edge_ids[i]];
    }
    Sym2 hess[6];
    for (int i = 0; i < 6; ++i) hess[i] = b.hessian(i);
    for (int i = 0; i < 6; ++i) {
      if (gdof[i] < 0) continue;
      for (int j = 0; j < 6; ++j) {
        if (gdof[j] < 0) continue;
        A.add(gdof[i], gdof[j], g.area * contract(hess[i], hess[j]));
      }
      double s = 0.0;
      if (rhs_mode == PlateRhs::exact) {
        for (const auto& node : qr.nodes)
          s += node.weight * f(bary_point(g, node.lambda)) * b.value(i, bary_point(g, node.lambda));
      } else if (i < 3) {
        // (f, Pi_D shape_i) = int_K f lambda_i; edge shapes vanish at all vertices
        for (const auto& node : qr.nodes)
          s += node.weight * f(bary_point(g, node.lambda)) * node.lambda[i];
      }
      rhs[gdof[i]] += 2.0 * g.area * s;
    }
  }

  auto [x, rep] = solve_spd(A, rhs, tol);
  (void)rep;
  MorleyFunction u;
  u.mesh = &mesh;
  u.vertex_dofs.assign(mesh.num_vertices(), 0.0);
  u.edge_dofs.assign(mesh.num_edges(), 0.0);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (num.vertex_idx[v] >= 0) u.vertex_dofs[v] = x[num.vertex_idx[v]];
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (num.edge_idx[e] >= 0) u.edge_dofs[e] = x[num.edge_idx[e]];
  return u;
}

P1Field pi_D(const MorleyFunction& v) {
  P1Field p;
  p.mesh = v.mesh;
  p.vertex_values = v.vertex_dofs;  // boundary entries are already zero
  return p;
}

P1Field pi_D(const ScalarFn& v, const Mesh& mesh) {
  const std::vector<char> bnd = boundary_vertex_flags(mesh);
  P1Field p;
  p.mesh = &mesh;
  p.vertex_values.assign(mesh.num_vertices(), 0.0);
  for (int i = 0; i < mesh.num_vertices(); ++i)
    if (!bnd[i]) p.vertex_values[i] = v(mesh.vertices[i]);
  return p;
}

double hhj_conformity_defect(const MorleyFunction& u) {
  const Mesh& m = *u.mesh;
  double worst = 0.0;
  std::vector<Sym2> hess = nonconforming_hessians(u);
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edges[e].is_boundary) continue;
    const Vec2 nu = m.edges[e].unit_normal;
    const double a = mnn(hess[m.edges[e].triangle_ids[0]], nu);
    const double b = mnn(hess[m.edges[e].triangle_ids[1]], nu);
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

std::pair<HHJField, P1Field> hhj_from_morley(const MorleyFunction& u_bar, double tol) {
  const Mesh& m = *u_bar.mesh;
  const double defect = hhj_conformity_defect(u_bar);
  if (defect > tol)
    throw std::runtime_error("hhj_from_morley: normal-normal trace jump " +
                             std::to_string(defect) +
                             " (expected the vertex_interpolated right-hand side)");
  std::vector<Sym2> hess = nonconforming_hessians(u_bar);
  HHJField sigma;
  sigma.mesh = &m;
  sigma.edge_mnn.assign(m.num_edges(), 0.0);
  for (int e = 0; e < m.num_edges(); ++e)
    sigma.edge_mnn[e] = mnn(hess[m.edges[e].triangle_ids[0]], m.edges[e].unit_normal);
  return {std::move(sigma), pi_D(u_bar)};
}

std::pair<HHJField, P1Field> solve_hhj_direct(const Mesh& mesh, const ScalarFn& f, double tol) {
  const std::vector<char> bnd = boundary_vertex_flags(mesh);
  std::vector<int> vidx(mesh.num_vertices(), -1);
  int nu_dofs = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (!bnd[v]) vidx[v] = nu_dofs++;
  const int ns = mesh.num_edges();

  SparseSymMatrix A(ns);
  SparseRectMatrix B(nu_dofs, ns);
  std::vector<double> g(nu_dofs, 0.0);
  const QuadratureRule& qr = triangle_quadrature(6);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeom& geo = mesh.geom[t];
    const HHJBasis hb = hhj_basis(geo);
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int ei = tri.edge_ids[i];
      for (int j = 0; j < 3; ++j)
        A.add(ei, tri.edge_ids[j], geo.area * contract(hb.shape[i], hb.shape[j]));
    }
    // b(tau, v) on K: the local basis has M_{nu nu}(shape_b) = delta_{bc} on edge c,
    // so the boundary integral collapses to |e_b| * grad(hat_z) . n_out(b)
    // per P1 hat function hat_z.
    for (int z = 0; z < 3; ++z) {
      const int gz = vidx[tri.vertex_ids[z]];
      if (gz < 0) continue;
      // grad lambda_z = -|e_z|/(2|K|) n_out(z)
      const Vec2 grad_hat = (-geo.edge_len[z] / (2.0 * geo.area)) * geo.normal_out[z];
      for (int bb = 0; bb < 3; ++bb)
        B.add(gz, tri.edge_ids[bb], geo.edge_len[bb] * dot(grad_hat, geo.normal_out[bb]));
      double s = 0.0;
      for (const auto& node : qr.nodes)
        s += node.weight * f(bary_point(geo, node.lambda)) * node.lambda[z];
      g[gz] += -2.0 * geo.area * s;  // (-f, v)
    }
  }

  SaddleSolution sol = solve_saddle(A, B, std::vector<double>(ns, 0.0), g, tol);
  HHJField sigma;
  sigma.mesh = &mesh;
  sigma.edge_mnn = std::move(sol.sigma);
  P1Field u;
  u.mesh = &mesh;
  u.vertex_values.assign(mesh.num_vertices(), 0.0);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (vidx[v] >= 0) u.vertex_values[v] = sol.u[vidx[v]];
  return {std::move(sigma), std::move(u)};
}

PlateGapReport plate_perturbation_check(const Mesh& mesh, const ScalarFn& f, double f_l2_norm) {
  const MorleyFunction u = solve_morley(mesh, f, PlateRhs::exact);
  const MorleyFunction ubar = solve_morley(mesh, f, PlateRhs::vertex_interpolated);
  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Sym2 d = u.hessian(t) - ubar.hessian(t);
    acc += mesh.geom[t].area * norm2(d);
  }
  PlateGapReport rep;
  rep.h = mesh.h;
  rep.difference_norm = std::sqrt(acc);
  rep.ratio = rep.difference_norm / (mesh.h * mesh.h * f_l2_norm);
  return rep;
}

}  // namespace ncfem
