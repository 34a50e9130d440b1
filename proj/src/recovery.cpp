#include "ncfem/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfem/quadrature.hpp"
#include "ncfem/study.hpp"

namespace ncfem {
namespace {

template <class V>
MidpointData<V> k_h_impl(const std::function<V(int, const Point2&)>& field, const Mesh& m) {
  if (m.n < 2) throw std::invalid_argument("k_h: needs n >= 2 for the boundary stencil");
  MidpointData<V> out;
  out.mesh = &m;
  out.edge_values.resize(m.num_edges());
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edges[e].is_boundary) continue;
    const auto& ed = m.edges[e];
    out.edge_values[e] =
        0.5 * (field(ed.triangle_ids[0], ed.midpoint) + field(ed.triangle_ids[1], ed.midpoint));
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.edges[e].is_boundary) continue;
    const BoundaryPartner& bp = m.boundary_extrapolation.at(e);
    out.edge_values[e] =
        2.0 * out.edge_values[bp.shared_edge] - out.edge_values[bp.interior_edge];
  }
  return out;
}

}  // namespace

MidpointVectorField k_h(const PiecewiseVectorField& field, const Mesh& mesh) {
  return k_h_impl(field, mesh);
}

MidpointMatrixField k_h(const PiecewiseMatrixField& field, const Mesh& mesh) {
  return k_h_impl(field, mesh);
}

RTField pi_rt(const std::function<Vec2(const Point2&)>& q, const Mesh& mesh) {
  const EdgeQuadratureRule& er = edge_quadrature(4);
  RTField out;
  out.mesh = &mesh;
  out.edge_flux.resize(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const Point2 a = mesh.vertices[ed.vertex_ids[0]];
    const Point2 b = mesh.vertices[ed.vertex_ids[1]];
    double s = 0.0;
    for (const auto& node : er.nodes)
      s += node.weight * dot(q((1.0 - node.s) * a + node.s * b), ed.unit_normal);
    out.edge_flux[e] = ed.length * s;
  }
  return out;
}

HHJField pi_hhj(const std::function<Sym2(const Point2&)>& tau, const Mesh& mesh) {
  const EdgeQuadratureRule& er = edge_quadrature(4);
  HHJField out;
  out.mesh = &mesh;
  out.edge_mnn.resize(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const Point2 a = mesh.vertices[ed.vertex_ids[0]];
    const Point2 b = mesh.vertices[ed.vertex_ids[1]];
    double s = 0.0;
    for (const auto& node : er.nodes)
      s += node.weight * mnn(tau((1.0 - node.s) * a + node.s * b), ed.unit_normal);
    out.edge_mnn[e] = s;
  }
  return out;
}

RateReport recovery_order_probe(const std::function<Vec2(const Point2&)>& q,
                                const std::vector<int>& levels, Domain domain) {
  RateReport rep;
  rep.levels = levels;
  for (const int n : levels) {
    const Mesh mesh = build_domain_mesh(domain, n);
    const RTField pq = pi_rt(q, mesh);
    const MidpointVectorField rec =
        k_h([&pq](int t, const Point2& x) { return pq.value(t, x); }, mesh);
    rep.errors.push_back(l2_error([&q](const Point2& x) { return q(x); },
                                  [&rec](int t, const Point2& x) { return rec.value(t, x); },
                                  mesh));
  }
  for (size_t i = 1; i < rep.errors.size(); ++i)
    rep.rates.push_back(std::log2(rep.errors[i - 1] / rep.errors[i]));
  return rep;
}

RateReport recovery_order_probe(const std::function<Sym2(const Point2&)>& tau,
                                const std::vector<int>& levels, Domain domain) {
  RateReport rep;
  rep.levels = levels;
  for (const int n : levels) {
    const Mesh mesh = build_domain_mesh(domain, n);
    const HHJField pt = pi_hhj(tau, mesh);
    const std::vector<Sym2> mats = hhj_matrices(pt);
    const MidpointMatrixField rec =
        k_h([&mats](int t, const Point2&) { return mats[t]; }, mesh);
    rep.errors.push_back(l2_error([&tau](const Point2& x) { return tau(x); },
                                  [&rec](int t, const Point2& x) { return rec.value(t, x); },
                                  mesh));
  }
  for (size_t i = 1; i < rep.errors.size(); ++i)
    rep.rates.push_back(std::log2(rep.errors[i - 1] / rep.errors[i]));
  return rep;
}

}  // namespace ncfem
