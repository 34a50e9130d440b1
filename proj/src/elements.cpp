#include "ncfem/elements.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace ncfem {
namespace {

// monomials {1, X, Y, X^2, XY, Y^2} at scaled coordinates
void monomials(double X, double Y, double* m) {
  m[0] = 1.0;
  m[1] = X;
  m[2] = Y;
  m[3] = X * X;
  m[4] = X * Y;
  m[5] = Y * Y;
}

}  // namespace

CRBasis cr_basis(const TriGeom& g) {
  CRBasis b;
  for (int i = 0; i < 3; ++i) b.grad[i] = (g.edge_len[i] / g.area) * g.normal_out[i];
  return b;
}

double MorleyBasis::value(int i, const Point2& x) const {
  const double X = (x.x1 - centroid.x1) / scale, Y = (x.x2 - centroid.x2) / scale;
  double m[6];
  monomials(X, Y, m);
  double v = 0.0;
  for (int k = 0; k < 6; ++k) v += coef[i][k] * m[k];
  return v;
}

Vec2 MorleyBasis::gradient(int i, const Point2& x) const {
  const double X = (x.x1 - centroid.x1) / scale, Y = (x.x2 - centroid.x2) / scale;
  const auto& c = coef[i];
  return (1.0 / scale) * Vec2{c[1] + 2.0 * c[3] * X + c[4] * Y, c[2] + c[4] * X + 2.0 * c[5] * Y};
}

Sym2 MorleyBasis::hessian(int i) const {
  const double s2 = scale * scale;
  const auto& c = coef[i];
  return {2.0 * c[3] / s2, c[4] / s2, 2.0 * c[5] / s2};
}

MorleyBasis morley_basis(const TriGeom& g) {
  MorleyBasis b;
  b.centroid = g.centroid;
  b.scale = g.diameter;
  Eigen::Matrix<double, 6, 6> D;
  double m[6];
  for (int i = 0; i < 3; ++i) {  // vertex values
    monomials((g.p[i].x1 - g.centroid.x1) / g.diameter, (g.p[i].x2 - g.centroid.x2) / g.diameter,
              m);
    for (int k = 0; k < 6; ++k) D(i, k) = m[k];
  }
  for (int i = 0; i < 3; ++i) {  // edge-mean normal derivatives = midpoint values (quadratics)
    const Vec2 nu = g.normal_sign[i] * g.normal_out[i];
    const double X = (g.edge_mid[i].x1 - g.centroid.x1) / g.diameter;
    const double Y = (g.edge_mid[i].x2 - g.centroid.x2) / g.diameter;
    const double s = g.diameter;
    const Vec2 gm[6] = {{0, 0}, {1 / s, 0}, {0, 1 / s}, {2 * X / s, 0}, {Y / s, X / s},
                        {0, 2 * Y / s}};
    for (int k = 0; k < 6; ++k) D(3 + i, k) = dot(gm[k], nu);
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(D);
  if (!lu.isInvertible()) throw std::runtime_error("morley_basis: singular DOF system");
  const Eigen::Matrix<double, 6, 6> C = lu.inverse();
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) b.coef[i][k] = C(k, i);
  return b;
}

RT0Basis rt0_basis(const TriGeom& g) {
  RT0Basis b;
  for (int i = 0; i < 3; ++i) {
    b.coef[i] = g.normal_sign[i] / (2.0 * g.area);
    b.opposite[i] = g.p[i];
    b.div[i] = g.normal_sign[i] / g.area;
  }
  return b;
}

HHJBasis hhj_basis(const TriGeom& g) {
  Eigen::Matrix3d D;
  for (int j = 0; j < 3; ++j) {
    const Vec2 nu = g.normal_out[j];
    D(j, 0) = nu.x1 * nu.x1;
    D(j, 1) = 2.0 * nu.x1 * nu.x2;
    D(j, 2) = nu.x2 * nu.x2;
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(D);
  if (!lu.isInvertible()) throw std::runtime_error("hhj_basis: degenerate triangle");
  const Eigen::Matrix3d C = lu.inverse();
  HHJBasis b;
  for (int i = 0; i < 3; ++i) b.shape[i] = {C(0, i), C(1, i), C(2, i)};
  return b;
}

}  // namespace ncfem
