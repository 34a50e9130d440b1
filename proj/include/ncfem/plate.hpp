#pragma once
#include <functional>
#include <utility>

#include "ncfem/fields.hpp"
#include "ncfem/poisson.hpp"
#include "ncfem/sparse.hpp"

namespace ncfem {

enum class PlateRhs { exact, vertex_interpolated };

// Morley solve of the clamped plate problem laplace^2 u = f: piecewise quadratics,
// (hess_NC u, hess_NC v) on the left, (f, v) or (f, Pi_D v) on the right.
MorleyFunction solve_morley(const Mesh& mesh, const ScalarFn& f, PlateRhs rhs_mode,
                            double tol = 1e-12);

// vertex interpolant onto continuous P1 with zero boundary values
P1Field pi_D(const MorleyFunction& v);
P1Field pi_D(const ScalarFn& v, const Mesh& mesh);

// max over interior edges of the two-sided M_{nu nu} mismatch of the broken Hessian
double hhj_conformity_defect(const MorleyFunction& u);

// The mixed pair read off a Morley solution: sigma = hess_NC u_bar, u = Pi_D u_bar.
// Requires the vertex_interpolated right-hand side; the normal-normal continuity of
// the Hessian is what makes sigma a valid mixed stress, so a conformity defect above
// tol means the wrong mode was passed (or a bug) and throws.
std::pair<HHJField, P1Field> hhj_from_morley(const MorleyFunction& u_bar, double tol = 1e-10);

// Hellan-Herrmann-Johnson solve: (sigma, tau) + b(tau, u) = 0, b(sigma, v) = (-f, v),
// with b(tau, v) = sum_K int_{boundary K} M_{nu nu}(tau) dv/dnu ds.
std::pair<HHJField, P1Field> solve_hhj_direct(const Mesh& mesh, const ScalarFn& f,
                                              double tol = 1e-12);

struct PlateGapReport {
  double difference_norm = 0.0;  // ||hess_NC(u_M - u_bar_M)||
  double h = 0.0;
  double ratio = 0.0;  // difference_norm / (h^2 ||f||)
};
// Measures the broken-Hessian gap between the two Morley right-hand sides; the h^2
// decay of this quantity is asserted across levels by the verification suite.
PlateGapReport plate_perturbation_check(const Mesh& mesh, const ScalarFn& f, double f_l2_norm);

}  // namespace ncfem
