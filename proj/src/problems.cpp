#include "ncfem/problems.hpp"

#include <cmath>

namespace ncfem {
namespace {

const double PI = 3.14159265358979323846;
const double R3 = std::sqrt(3.0);

// u = phi(s) psi(t) with s = x1 - sqrt(3) x2, t = x2:
//   phi(s) = s^2 (s-2)^2, psi(t) = t^2 (sqrt(3)/2 - t)^2
double phi(double s) { return s * s * (s - 2.0) * (s - 2.0); }
double dphi(double s) { return 2.0 * s * (s - 2.0) * (2.0 * s - 2.0); }
double ddphi(double s) { return 2.0 * (2.0 * s - 2.0) * (2.0 * s - 2.0) + 4.0 * s * (s - 2.0); }
double psi(double t) {
  const double r = R3 / 2.0 - t;
  return t * t * r * r;
}
double dpsi(double t) {
  const double r = R3 / 2.0 - t;
  return 2.0 * t * r * r - 2.0 * t * t * r;
}
double ddpsi(double t) {
  const double r = R3 / 2.0 - t;
  return 2.0 * r * r - 8.0 * t * r + 2.0 * t * t;
}

}  // namespace

ProblemSpec square_sine_problem() {
  ProblemSpec p;
  p.name = "square-sine";
  p.domain = Domain::square;
  p.u = [](const Point2& x) { return std::sin(PI * x.x1) * std::sin(PI * x.x2); };
  p.grad_u = [](const Point2& x) -> Vec2 {
    return {PI * std::cos(PI * x.x1) * std::sin(PI * x.x2),
            PI * std::sin(PI * x.x1) * std::cos(PI * x.x2)};
  };
  p.hess_u = [](const Point2& x) -> Sym2 {
    const double s1 = std::sin(PI * x.x1), s2 = std::sin(PI * x.x2);
    const double c1 = std::cos(PI * x.x1), c2 = std::cos(PI * x.x2);
    return {-PI * PI * s1 * s2, PI * PI * c1 * c2, -PI * PI * s1 * s2};
  };
  p.f = [](const Point2& x) {
    return 2.0 * PI * PI * std::sin(PI * x.x1) * std::sin(PI * x.x2);
  };
  p.f_h1_seminorm = std::sqrt(2.0) * PI * PI * PI;   // |f|_1 = sqrt(2) pi^3
  p.f_l2_norm = PI * PI;                             // ||f|| = 2 pi^2 ||u|| = pi^2
  return p;
}

ProblemSpec parallelogram_plate_problem() {
  ProblemSpec p;
  p.name = "parallelogram-plate";
  p.domain = Domain::parallelogram;
  p.u = [](const Point2& x) { return phi(x.x1 - R3 * x.x2) * psi(x.x2); };
  p.grad_u = [](const Point2& x) -> Vec2 {
    const double s = x.x1 - R3 * x.x2, t = x.x2;
    return {dphi(s) * psi(t), -R3 * dphi(s) * psi(t) + phi(s) * dpsi(t)};
  };
  p.hess_u = [](const Point2& x) -> Sym2 {
    const double s = x.x1 - R3 * x.x2, t = x.x2;
    return {ddphi(s) * psi(t),
            -R3 * ddphi(s) * psi(t) + dphi(s) * dpsi(t),
            3.0 * ddphi(s) * psi(t) - 2.0 * R3 * dphi(s) * dpsi(t) + phi(s) * ddpsi(t)};
  };
  // laplace^2 u expanded once offline (degree 4)
  p.f = [](const Point2& x) {
    const double x1 = x.x1, x2 = x.x2;
    return 24.0 * x1 * x1 * x1 * x1 - 480.0 * R3 * x1 * x1 * x1 * x2 + 192.0 * x1 * x1 * x1 +
           6768.0 * x1 * x1 * x2 * x2 - 864.0 * R3 * x1 * x1 * x2 - 408.0 * x1 * x1 -
           11040.0 * R3 * x1 * x2 * x2 * x2 + 1152.0 * x1 * x2 * x2 + 2352.0 * R3 * x1 * x2 -
           144.0 * x1 + 17304.0 * x2 * x2 * x2 * x2 + 2016.0 * R3 * x2 * x2 * x2 -
           7080.0 * x2 * x2 - 240.0 * R3 * x2 + 240.0;
  };
  p.f_h1_seminorm = 0.0;  // not used for the plate bound
  p.f_l2_norm = std::sqrt(1452448.0 * std::sqrt(3.0) / 175.0);  // exact ||f||_{L2}
  return p;
}

}  // namespace ncfem
