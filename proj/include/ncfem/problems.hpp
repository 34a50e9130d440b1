#pragma once
#include <functional>
#include <string>

#include "ncfem/fields.hpp"

namespace ncfem {

// A manufactured problem: exact solution with derivatives, the matching right-hand
// side, and the analytic norms of f the perturbation bounds need.
struct ProblemSpec {
  std::string name;
  Domain domain = Domain::square;
  std::function<double(const Point2&)> u;
  std::function<Vec2(const Point2&)> grad_u;
  std::function<Sym2(const Point2&)> hess_u;
  std::function<double(const Point2&)> f;
  double f_h1_seminorm = 0.0;  // |f|_1
  double f_l2_norm = 0.0;      // ||f||_0

  Mesh build_mesh(int n) const { return build_domain_mesh(domain, n); }
};

// -laplace u = f on (0,1)^2 with u = sin(pi x1) sin(pi x2)
ProblemSpec square_sine_problem();

// laplace^2 u = f on the parallelogram with
// u = (x1 - sqrt(3) x2)^2 (x1 - sqrt(3) x2 - 2)^2 x2^2 (sqrt(3)/2 - x2)^2,
// which vanishes to second order on all four sides. f is the expanded degree-4
// polynomial laplace^2 u, so polynomial quadrature handles it exactly.
ProblemSpec parallelogram_plate_problem();

}  // namespace ncfem
