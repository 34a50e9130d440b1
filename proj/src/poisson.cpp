#include "ncfem/poisson.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfem/quadrature.hpp"

namespace ncfem {
namespace {

Point2 bary_point(const TriGeom& g, const std::array<double, 3>& lam) {
  return lam[0] * g.p[0] + lam[1] * g.p[1] + lam[2] * g.p[2];
}

// interior-edge unknown numbering; boundary edges carry no DOF
std::vector<int> interior_edge_index(const Mesh& m, int& count) {
  std::vector<int> idx(m.num_edges(), -1);
  count = 0;
  for (int e = 0; e < m.num_edges(); ++e)
    if (!m.edges[e].is_boundary) idx[e] = count++;
  return idx;
}

}  // namespace

P0Field project_p0(const ScalarFn& f, const Mesh& mesh) {
  const QuadratureRule& qr = triangle_quadrature(6);
  P0Field out;
  out.mesh = &mesh;
  out.values.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeom& g = mesh.geom[t];
    double s = 0.0;
    for (const auto& node : qr.nodes) s += node.weight * f(bary_point(g, node.lambda));
    out.values[t] = 2.0 * s;  // (2|K| sum w f) / |K|
  }
  return out;
}

CRFunction solve_cr(const Mesh& mesh, const ScalarFn& f, PoissonRhs rhs_mode, double tol) {
  int ndof = 0;
  const std::vector<int> idx = interior_edge_index(mesh, ndof);
  SparseSymMatrix A(ndof);
  std::vector<double> rhs(ndof, 0.0);
  const QuadratureRule& qr = triangle_quadrature(6);
  P0Field fbar;
  if (rhs_mode == PoissonRhs::projected) fbar = project_p0(f, mesh);

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeom& g = mesh.geom[t];
    const CRBasis b = cr_basis(g);
    for (int i = 0; i < 3; ++i) {
      const int gi = idx[mesh.triangles[t].edge_ids[i]];
      if (gi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int gj = idx[mesh.triangles[t].edge_ids[j]];
        if (gj < 0) continue;
        A.add(gi, gj, g.area * dot(b.grad[i], b.grad[j]));
      }
      if (rhs_mode == PoissonRhs::exact) {
        double s = 0.0;
        for (const auto& node : qr.nodes)
          s += node.weight * f(bary_point(g, node.lambda)) * CRBasis::value(i, node.lambda);
        rhs[gi] += 2.0 * g.area * s;
      } else {
        rhs[gi] += fbar.values[t] * g.area / 3.0;  // int_K (1 - 2 lambda_i) = |K|/3
      }
    }
  }

  auto [x, rep] = solve_spd(A, rhs, tol);
  (void)rep;
  CRFunction u;
  u.mesh = &mesh;
  u.edge_dofs.assign(mesh.num_edges(), 0.0);
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (idx[e] >= 0) u.edge_dofs[e] = x[idx[e]];
  return u;
}

namespace {

// per-triangle lifted field evaluated at an edge midpoint, dotted with the global normal
double marini_flux(const Mesh& m, const P0Field& fbar, const CRFunction& u_bar, int t, int i) {
  const TriGeom& g = m.geom[t];
  const Vec2 grad = u_bar.gradient(t);
  const Vec2 field = grad - (fbar.values[t] / 2.0) * (g.edge_mid[i] - g.centroid);
  return g.edge_len[i] * dot(field, g.normal_sign[i] * g.normal_out[i]);
}

}  // namespace

RTField marini_reconstruction(const CRFunction& u_bar, const ScalarFn& f, const Mesh& mesh) {
  const P0Field fbar = project_p0(f, mesh);
  RTField sigma;
  sigma.mesh = &mesh;
  sigma.edge_flux.assign(mesh.num_edges(), 0.0);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int t = mesh.edges[e].triangle_ids[0];
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i)
      if (tri.edge_ids[i] == e) sigma.edge_flux[e] = marini_flux(mesh, fbar, u_bar, t, i);
  }
  return sigma;
}

double marini_conformity_defect(const CRFunction& u_bar, const ScalarFn& f, const Mesh& mesh) {
  const P0Field fbar = project_p0(f, mesh);
  double worst = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (mesh.edges[e].is_boundary) continue;
    double flux[2] = {0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
      const int t = mesh.edges[e].triangle_ids[s];
      for (int i = 0; i < 3; ++i)
        if (mesh.triangles[t].edge_ids[i] == e) flux[s] = marini_flux(mesh, fbar, u_bar, t, i);
    }
    // compare normal components (flux per unit length)
    worst = std::max(worst, std::abs(flux[0] - flux[1]) / mesh.edges[e].length);
  }
  return worst;
}

std::pair<RTField, P0Field> solve_rt_mixed(const Mesh& mesh, const ScalarFn& f, double tol) {
  const int ns = mesh.num_edges(), nu = mesh.num_triangles();
  SparseSymMatrix A(ns);
  SparseRectMatrix B(nu, ns);
  std::vector<double> g(nu, 0.0);
  const QuadratureRule& qr2 = triangle_quadrature(2);
  const QuadratureRule& qr6 = triangle_quadrature(6);

  for (int t = 0; t < nu; ++t) {
    const TriGeom& geo = mesh.geom[t];
    const RT0Basis b = rt0_basis(geo);
    for (int i = 0; i < 3; ++i) {
      const int ei = mesh.triangles[t].edge_ids[i];
      for (int j = 0; j < 3; ++j) {
        const int ej = mesh.triangles[t].edge_ids[j];
        double s = 0.0;
        for (const auto& node : qr2.nodes) {
          const Point2 x = bary_point(geo, node.lambda);
          s += node.weight * dot(b.value(i, x), b.value(j, x));
        }
        A.add(ei, ej, 2.0 * geo.area * s);
      }
      // (u, div tau): int_K div shape_i = normal sign
      B.add(t, ei, geo.normal_sign[i]);
    }
    double s = 0.0;
    for (const auto& node : qr6.nodes) s += node.weight * f(bary_point(geo, node.lambda));
    g[t] = -2.0 * geo.area * s;  // (div sigma, v) = (-f, v)
  }

  SaddleSolution sol = solve_saddle(A, B, std::vector<double>(ns, 0.0), g, tol);
  RTField sigma;
  sigma.mesh = &mesh;
  sigma.edge_flux = std::move(sol.sigma);
  P0Field u;
  u.mesh = &mesh;
  u.values = std::move(sol.u);
  return {std::move(sigma), std::move(u)};
}

PerturbationReport cr_perturbation_check(const Mesh& mesh, const ScalarFn& f,
                                         double f_h1_seminorm) {
  const CRFunction u = solve_cr(mesh, f, PoissonRhs::exact);
  const CRFunction ubar = solve_cr(mesh, f, PoissonRhs::projected);
  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec2 d = u.gradient(t) - ubar.gradient(t);
    acc += mesh.geom[t].area * norm2(d);
  }
  PerturbationReport rep;
  rep.h = mesh.h;
  rep.difference_norm = std::sqrt(acc);
  const double j11 = 3.8317;  // first positive root of the Bessel function J_1
  rep.bound = mesh.h * mesh.h / (j11 * j11) * f_h1_seminorm;
  rep.pass = rep.difference_norm <= rep.bound;
  return rep;
}

}  // namespace ncfem
