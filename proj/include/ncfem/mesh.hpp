#pragma once
#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncfem/geometry.hpp"

namespace ncfem {

struct Edge {
  std::array<int, 2> vertex_ids;    // ascending
  std::array<int, 2> triangle_ids;  // ascending; second is -1 on the boundary
  Vec2 unit_normal;     // from the lower-indexed triangle to the higher; outward on the boundary
  Point2 midpoint;
  double length = 0.0;
  bool is_boundary = false;
};

struct Triangle {
  std::array<int, 3> vertex_ids;  // counterclockwise
  std::array<int, 3> edge_ids;    // edge i opposite vertex i
};

// Extrapolation stencil of a boundary edge with midpoint P: K and partner_triangle
// share shared_edge and form a parallelogram with center N_c = center; the reflected
// point 2*N_c - P is the midpoint of interior_edge (always an edge of the partner).
struct BoundaryPartner {
  int partner_triangle = -1;
  int shared_edge = -1;
  Point2 center;
  Point2 reflected;
  int interior_edge = -1;
};

// Per-triangle geometry cache. Everything indexed like Triangle: entry i belongs to
// the edge opposite vertex i.
struct TriGeom {
  std::array<Point2, 3> p;
  double area = 0.0;  // positive (triangles are counterclockwise)
  Point2 centroid;
  double diameter = 0.0;  // longest edge
  std::array<double, 3> edge_len;
  std::array<Point2, 3> edge_mid;
  std::array<Vec2, 3> normal_out;     // outward unit normals
  std::array<double, 3> normal_sign;  // +1 if the mesh's global edge normal is the outward one

  std::array<double, 3> barycentric(const Point2& x) const;
};

struct UniformityReport {
  bool pass = false;
  double worst_defect = 0.0;
};

enum class Domain { square, parallelogram };

struct Mesh {
  Domain domain = Domain::square;
  int n = 0;       // subdivision count per direction
  double h = 0.0;  // max triangle diameter
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  std::vector<TriGeom> geom;  // parallel to triangles
  // stencils per boundary edge; populated for n >= 2 only
  std::unordered_map<int, BoundaryPartner> boundary_extrapolation;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

// n x n cells on (0,1)^2, each split by its lower-left -> upper-right diagonal.
Mesh build_uniform_square_mesh(int n);

// The square mesh pushed through (s,t) |-> (2s + 1.5t, sqrt(3)/2 t): domain corners
// (0,0), (2,0), (7/2, sqrt(3)/2), (3/2, sqrt(3)/2). Cells are split by the image of
// the lower-right -> upper-left reference diagonal, which is the short one here.
Mesh build_uniform_parallelogram_mesh(int n);

Mesh build_domain_mesh(Domain domain, int n);

// max over interior edges of |a + b - p - q| (opposite vertices vs. endpoints);
// pass iff the worst defect is <= 1e-12 * h.
UniformityReport verify_uniformity(const Mesh& mesh);

// Deterministic choice: walk K's edges in local index order, take the first interior
// one whose reflected point lands on an interior edge midpoint. Throws for n < 2,
// non-boundary edges, and meshes where no candidate works.
BoundaryPartner boundary_partner(const Mesh& mesh, int boundary_edge);

// plain-text debug dump: "v x1 x2" lines then "t i j k" lines
std::string dump_mesh(const Mesh& mesh);

}  // namespace ncfem
