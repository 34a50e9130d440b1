#pragma once
#include <array>
#include <cmath>

namespace ncfem {

struct Point2 {
  double x1 = 0.0, x2 = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Point2 a) { return std::sqrt(dot(a, a)); }
inline double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }

// 2-vectors and points share the representation; the alias keeps signatures readable.
using Vec2 = Point2;

// Symmetric 2x2 matrix. The inner product and norm count the off-diagonal twice,
// matching the symmetric-pair convention used for the matrix-valued spaces here
// (a symmetric tau stands for the full matrix with tau21 = tau12).
struct Sym2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
};

inline Sym2 operator+(Sym2 a, Sym2 b) { return {a.a11 + b.a11, a.a12 + b.a12, a.a22 + b.a22}; }
inline Sym2 operator-(Sym2 a, Sym2 b) { return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22}; }
inline Sym2 operator*(double s, Sym2 a) { return {s * a.a11, s * a.a12, s * a.a22}; }
inline double contract(Sym2 a, Sym2 b) {
  return a.a11 * b.a11 + 2.0 * a.a12 * b.a12 + a.a22 * b.a22;
}
inline Vec2 apply(Sym2 m, Vec2 v) {
  return {m.a11 * v.x1 + m.a12 * v.x2, m.a12 * v.x1 + m.a22 * v.x2};
}
// nu^T tau nu (normal-normal trace); invariant under nu -> -nu.
inline double mnn(Sym2 tau, Vec2 nu) { return dot(nu, apply(tau, nu)); }
// nu^T tau t (normal-tangential trace).
inline double mnt(Sym2 tau, Vec2 nu, Vec2 t) { return dot(nu, apply(tau, t)); }

// squared-norm helpers used by the L2 error integrals
inline double norm2(Vec2 v) { return dot(v, v); }
inline double norm2(Sym2 m) { return contract(m, m); }

}  // namespace ncfem
