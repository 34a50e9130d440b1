#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ncfem/mesh.hpp"

using namespace ncfem;

TEST_SUITE("mesh") {

TEST_CASE("entity counts and Euler relation") {
  for (Domain dom : {Domain::square, Domain::parallelogram}) {
    for (int n : {1, 2, 3, 4, 8}) {
      const Mesh m = build_domain_mesh(dom, n);
      CHECK(m.num_vertices() == (n + 1) * (n + 1));
      CHECK(m.num_triangles() == 2 * n * n);
      CHECK(m.num_edges() == 3 * n * n + 2 * n);
      int boundary = 0;
      for (const Edge& e : m.edges) boundary += e.is_boundary ? 1 : 0;
      CHECK(boundary == 4 * n);
      CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 1);
    }
  }
  // n=1: 2 triangles, 4 vertices, 5 edges, 1 interior edge
  const Mesh m1 = build_uniform_square_mesh(1);
  CHECK(m1.num_triangles() == 2);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_edges() == 5);
  int interior = 0;
  for (const Edge& e : m1.edges) interior += e.is_boundary ? 0 : 1;
  CHECK(interior == 1);
}

TEST_CASE("triangles are counterclockwise with consistent geometry") {
  for (Domain dom : {Domain::square, Domain::parallelogram}) {
    const Mesh m = build_domain_mesh(dom, 3);
    for (int t = 0; t < m.num_triangles(); ++t) {
      const TriGeom& g = m.geom[t];
      CHECK(g.area > 0.0);
      for (int i = 0; i < 3; ++i) {
        CHECK(norm(g.normal_out[i]) == doctest::Approx(1.0).epsilon(1e-14));
        // outward: positive against the centroid-to-edge-midpoint direction
        CHECK(dot(g.normal_out[i], g.edge_mid[i] - g.centroid) > 0.0);
        // edge i is opposite vertex i
        const Edge& e = m.edges[m.triangles[t].edge_ids[i]];
        CHECK(e.vertex_ids[0] != m.triangles[t].vertex_ids[i]);
        CHECK(e.vertex_ids[1] != m.triangles[t].vertex_ids[i]);
      }
    }
    for (const Edge& e : m.edges) {
      CHECK(norm(e.unit_normal) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(e.vertex_ids[0] < e.vertex_ids[1]);
      if (!e.is_boundary) CHECK(e.triangle_ids[0] < e.triangle_ids[1]);
    }
  }
}

TEST_CASE("mesh size h is the longest edge") {
  const Mesh m = build_uniform_square_mesh(4);
  CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-14));
}

TEST_CASE("uniformity holds for both families and fails under perturbation") {
  for (Domain dom : {Domain::square, Domain::parallelogram}) {
    for (int n : {1, 2, 4, 8}) {
      const UniformityReport rep = verify_uniformity(build_domain_mesh(dom, n));
      CHECK(rep.pass);
      CHECK(rep.worst_defect <= 1e-12);
    }
  }
  Mesh bad = build_uniform_square_mesh(4);
  // shift one interior vertex by 0.1 h
  const int mid = 2 * 5 + 2;
  bad.vertices[mid].x1 += 0.1 * bad.h;
  CHECK_FALSE(verify_uniformity(bad).pass);
}

TEST_CASE("boundary partner geometry on the 2x2 square mesh") {
  const Mesh m = build_uniform_square_mesh(2);
  int checked = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.edges[e].is_boundary) continue;
    const BoundaryPartner bp = boundary_partner(m, e);
    // P~ + P = 2 N_c
    const Point2 p = m.edges[e].midpoint;
    CHECK(bp.reflected.x1 + p.x1 == doctest::Approx(2 * bp.center.x1).epsilon(1e-14));
    CHECK(bp.reflected.x2 + p.x2 == doctest::Approx(2 * bp.center.x2).epsilon(1e-14));
    // the reflected point is an interior edge midpoint
    const Edge& ie = m.edges[bp.interior_edge];
    CHECK_FALSE(ie.is_boundary);
    CHECK(norm(ie.midpoint - bp.reflected) < 1e-13);
    // bottom edge with midpoint (1/4, 0): N_c = (1/4, 1/4), P~ = (1/4, 1/2)
    if (std::abs(p.x1 - 0.25) < 1e-13 && std::abs(p.x2) < 1e-13) {
      CHECK(bp.center.x1 == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(bp.center.x2 == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(bp.reflected.x1 == doctest::Approx(0.25).epsilon(1e-14));
      CHECK(bp.reflected.x2 == doctest::Approx(0.5).epsilon(1e-14));
      ++checked;
    }
    // left edge of the corner cell: P~ sits on the vertical edge one cell right
    if (std::abs(p.x1) < 1e-13 && std::abs(p.x2 - 0.25) < 1e-13) {
      CHECK(bp.reflected.x1 == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(bp.reflected.x2 == doctest::Approx(0.25).epsilon(1e-14));
      ++checked;
    }
  }
  CHECK(checked == 2);
  // every boundary edge of larger meshes has a cached partner
  for (Domain dom : {Domain::square, Domain::parallelogram}) {
    const Mesh big = build_domain_mesh(dom, 4);
    int cached = 0;
    for (const auto& [edge, bp] : big.boundary_extrapolation) {
      CHECK(big.edges[edge].is_boundary);
      CHECK_FALSE(big.edges[bp.interior_edge].is_boundary);
      ++cached;
    }
    CHECK(cached == 16);
  }
}

TEST_CASE("parallelogram mesh is the affine image of the square mesh") {
  const int n = 3;
  const Mesh sq = build_uniform_square_mesh(n);
  const Mesh pa = build_uniform_parallelogram_mesh(n);
  const double r3h = std::sqrt(3.0) / 2;
  for (int v = 0; v < sq.num_vertices(); ++v) {
    const Point2 s = sq.vertices[v];
    const Point2 expect{2 * s.x1 + 1.5 * s.x2, r3h * s.x2};
    CHECK(norm(pa.vertices[v] - expect) < 1e-14);
  }
  // corners of the domain
  const Mesh p1 = build_uniform_parallelogram_mesh(1);
  std::set<std::pair<double, double>> corners;
  for (const Point2& v : p1.vertices) corners.insert({v.x1, v.x2});
  CHECK(corners.count({0.0, 0.0}) == 1);
  CHECK(corners.count({2.0, 0.0}) == 1);
  CHECK(corners.count({1.5, r3h}) == 1);
  CHECK(corners.count({3.5, r3h}) == 1);
}

TEST_CASE("barycentric coordinates invert the vertex map") {
  const Mesh m = build_uniform_parallelogram_mesh(2);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const TriGeom& g = m.geom[t];
    const Point2 x = (1.0 / 7) * g.p[0] + (2.0 / 7) * g.p[1] + (4.0 / 7) * g.p[2];
    const auto lam = g.barycentric(x);
    CHECK(lam[0] == doctest::Approx(1.0 / 7).epsilon(1e-12));
    CHECK(lam[1] == doctest::Approx(2.0 / 7).epsilon(1e-12));
    CHECK(lam[2] == doctest::Approx(4.0 / 7).epsilon(1e-12));
  }
}

TEST_CASE("invalid sizes and partner preconditions throw") {
  CHECK_THROWS_AS(build_uniform_square_mesh(0), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_parallelogram_mesh(-2), std::invalid_argument);
  CHECK_THROWS_AS(boundary_partner(build_uniform_square_mesh(1), 0),
                  std::invalid_argument);
  const Mesh m = build_uniform_square_mesh(2);
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edges[e].is_boundary) continue;
    CHECK_THROWS_AS(boundary_partner(m, e), std::invalid_argument);
    break;
  }
}

TEST_CASE("dump format") {
  const std::string text = dump_mesh(build_uniform_square_mesh(1));
  CHECK(text.find("v 0 0") != std::string::npos);
  CHECK(text.find("v 1 1") != std::string::npos);
  CHECK(text.find("t ") != std::string::npos);
}

}  // TEST_SUITE
