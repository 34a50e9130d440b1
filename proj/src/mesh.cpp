#include "ncfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace ncfem {
namespace {

TriGeom make_geom(const Mesh& m, int t) {
  TriGeom g;
  const auto& tri = m.triangles[t];
  for (int i = 0; i < 3; ++i) g.p[i] = m.vertices[tri.vertex_ids[i]];
  g.area = 0.5 * cross(g.p[1] - g.p[0], g.p[2] - g.p[0]);
  g.centroid = (1.0 / 3.0) * (g.p[0] + g.p[1] + g.p[2]);
  g.diameter = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Point2 a = g.p[(i + 1) % 3];
    const Point2 b = g.p[(i + 2) % 3];
    g.edge_len[i] = norm(b - a);
    g.edge_mid[i] = 0.5 * (a + b);
    g.diameter = std::max(g.diameter, g.edge_len[i]);
    Vec2 nrm = {(b - a).x2, -(b - a).x1};
    nrm = (1.0 / g.edge_len[i]) * nrm;
    if (dot(nrm, g.edge_mid[i] - g.centroid) < 0.0) nrm = -1.0 * nrm;
    g.normal_out[i] = nrm;
    g.normal_sign[i] = dot(nrm, m.edges[tri.edge_ids[i]].unit_normal) > 0.0 ? 1.0 : -1.0;
  }
  return g;
}

// Build edges, normals, geometry caches and the boundary stencils for an
// already-listed triangulation.
void finish_mesh(Mesh& m) {
  std::map<std::array<int, 2>, int> edge_of;
  for (int t = 0; t < m.num_triangles(); ++t) {
    auto& tri = m.triangles[t];
    if (cross(m.vertices[tri.vertex_ids[1]] - m.vertices[tri.vertex_ids[0]],
              m.vertices[tri.vertex_ids[2]] - m.vertices[tri.vertex_ids[0]]) <= 0.0)
      throw std::logic_error("finish_mesh: triangle " + std::to_string(t) + " not counterclockwise");
    for (int i = 0; i < 3; ++i) {
      int a = tri.vertex_ids[(i + 1) % 3];
      int b = tri.vertex_ids[(i + 2) % 3];
      std::array<int, 2> key = {std::min(a, b), std::max(a, b)};
      auto it = edge_of.find(key);
      int e;
      if (it == edge_of.end()) {
        e = m.num_edges();
        edge_of.emplace(key, e);
        Edge edge;
        edge.vertex_ids = key;
        edge.triangle_ids = {t, -1};
        m.edges.push_back(edge);
      } else {
        e = it->second;
        if (m.edges[e].triangle_ids[1] != -1)
          throw std::logic_error("finish_mesh: edge shared by three triangles");
        m.edges[e].triangle_ids[1] = t;
      }
      tri.edge_ids[i] = e;
    }
  }

  for (auto& e : m.edges) {
    const Point2 a = m.vertices[e.vertex_ids[0]];
    const Point2 b = m.vertices[e.vertex_ids[1]];
    e.midpoint = 0.5 * (a + b);
    e.length = norm(b - a);
    e.is_boundary = e.triangle_ids[1] == -1;
    // normal pointing away from the lower-indexed triangle
    const auto& tri = m.triangles[e.triangle_ids[0]];
    const Point2 c = (1.0 / 3.0) * (m.vertices[tri.vertex_ids[0]] + m.vertices[tri.vertex_ids[1]] +
                                    m.vertices[tri.vertex_ids[2]]);
    Vec2 nrm = {(b - a).x2, -(b - a).x1};
    nrm = (1.0 / e.length) * nrm;
    if (dot(nrm, e.midpoint - c) < 0.0) nrm = -1.0 * nrm;
    e.unit_normal = nrm;
  }

  m.h = 0.0;
  m.geom.resize(m.num_triangles());
  for (int t = 0; t < m.num_triangles(); ++t) {
    m.geom[t] = make_geom(m, t);
    m.h = std::max(m.h, m.geom[t].diameter);
  }

  if (m.n >= 2) {
    for (int e = 0; e < m.num_edges(); ++e)
      if (m.edges[e].is_boundary) m.boundary_extrapolation.emplace(e, boundary_partner(m, e));
  }
}

Mesh build_structured(int n, Domain domain) {
  if (n < 1) throw std::invalid_argument("mesh: subdivision count must be positive");
  Mesh m;
  m.domain = domain;
  m.n = n;
  m.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double s = double(i) / n, t = double(j) / n;
      if (domain == Domain::square)
        m.vertices.push_back({s, t});
      else
        m.vertices.push_back({2.0 * s + 1.5 * t, std::sqrt(3.0) / 2.0 * t});
    }
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  m.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j), ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      Triangle t1, t2;
      if (domain == Domain::square) {
        // diagonal LL -> UR; it is local edge 0 of both triangles
        t1.vertex_ids = {lr, ur, ll};
        t2.vertex_ids = {ul, ll, ur};
      } else {
        // diagonal LR -> UL (the short one after the affine map)
        t1.vertex_ids = {ul, ll, lr};  // edges: bottom, diagonal, left
        t2.vertex_ids = {ur, ul, lr};  // edges: diagonal, right, top
      }
      m.triangles.push_back(t1);
      m.triangles.push_back(t2);
    }
  finish_mesh(m);
  return m;
}

int opposite_vertex(const Mesh& m, int t, int e) {
  const auto& tri = m.triangles[t];
  for (int i = 0; i < 3; ++i)
    if (tri.edge_ids[i] == e) return tri.vertex_ids[i];
  throw std::logic_error("opposite_vertex: edge not on triangle");
}

}  // namespace

std::array<double, 3> TriGeom::barycentric(const Point2& x) const {
  const double inv = 1.0 / (2.0 * area);
  return {cross(p[1] - x, p[2] - x) * inv, cross(p[2] - x, p[0] - x) * inv,
          cross(p[0] - x, p[1] - x) * inv};
}

Mesh build_uniform_square_mesh(int n) { return build_structured(n, Domain::square); }

Mesh build_uniform_parallelogram_mesh(int n) { return build_structured(n, Domain::parallelogram); }

Mesh build_domain_mesh(Domain domain, int n) { return build_structured(n, domain); }

UniformityReport verify_uniformity(const Mesh& m) {
  UniformityReport r;
  r.worst_defect = 0.0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edges[e].is_boundary) continue;
    const Point2 p = m.vertices[m.edges[e].vertex_ids[0]];
    const Point2 q = m.vertices[m.edges[e].vertex_ids[1]];
    const Point2 a = m.vertices[opposite_vertex(m, m.edges[e].triangle_ids[0], e)];
    const Point2 b = m.vertices[opposite_vertex(m, m.edges[e].triangle_ids[1], e)];
    const Point2 d = (a + b) - (p + q);
    r.worst_defect = std::max({r.worst_defect, std::abs(d.x1), std::abs(d.x2)});
  }
  r.pass = r.worst_defect <= 1e-12 * m.h;
  return r;
}

BoundaryPartner boundary_partner(const Mesh& m, int boundary_edge) {
  if (m.n < 2)
    throw std::invalid_argument("boundary_partner: needs n >= 2");
  if (boundary_edge < 0 || boundary_edge >= m.num_edges() || !m.edges[boundary_edge].is_boundary)
    throw std::invalid_argument("boundary_partner: not a boundary edge");
  const int K = m.edges[boundary_edge].triangle_ids[0];
  const Point2 P = m.edges[boundary_edge].midpoint;
  const double tol = 1e-9 * m.h;  // midpoints are h/4 apart, so this is unambiguous
  for (int i = 0; i < 3; ++i) {
    const int shared = m.triangles[K].edge_ids[i];
    const Edge& se = m.edges[shared];
    if (se.is_boundary) continue;
    const int Kt = se.triangle_ids[0] == K ? se.triangle_ids[1] : se.triangle_ids[0];
    const Point2 nc = se.midpoint;
    const Point2 pt = 2.0 * nc - P;
    // reflection through nc maps K onto the partner, so pt is the midpoint of one
    // of the partner's edges; find it and require it to be interior
    for (int jj = 0; jj < 3; ++jj) {
      const int cand = m.triangles[Kt].edge_ids[jj];
      if (norm(m.edges[cand].midpoint - pt) <= tol) {
        if (!m.edges[cand].is_boundary) {
          BoundaryPartner bp;
          bp.partner_triangle = Kt;
          bp.shared_edge = shared;
          bp.center = nc;
          bp.reflected = pt;
          bp.interior_edge = cand;
          return bp;
        }
        break;
      }
    }
  }
  throw std::runtime_error("boundary_partner: no parallelogram partner with an interior image");
}

std::string dump_mesh(const Mesh& m) {
  std::string out;
  char line[128];
  for (const auto& v : m.vertices) {
    std::snprintf(line, sizeof line, "v %.17g %.17g\n", v.x1, v.x2);
    out += line;
  }
  for (const auto& t : m.triangles) {
    std::snprintf(line, sizeof line, "t %d %d %d\n", t.vertex_ids[0], t.vertex_ids[1],
                  t.vertex_ids[2]);
    out += line;
  }
  return out;
}

}  // namespace ncfem
