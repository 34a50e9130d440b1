#pragma once
#include <functional>
#include <utility>

#include "ncfem/fields.hpp"
#include "ncfem/sparse.hpp"

namespace ncfem {

using ScalarFn = std::function<double(const Point2&)>;

// elementwise means (1/|K|) int_K f, by degree-6 quadrature
P0Field project_p0(const ScalarFn& f, const Mesh& mesh);

enum class PoissonRhs { exact, projected };

// Crouzeix-Raviart solve of -laplace u = f with homogeneous Dirichlet data.
// rhs_mode picks (f, v) or (Pi_0 f, v); the latter is the variant the Raviart-Thomas
// equivalence is stated for.
CRFunction solve_cr(const Mesh& mesh, const ScalarFn& f, PoissonRhs rhs_mode,
                    double tol = 1e-12);

// Closed-form lift of the projected-mode solution into H(div):
//   sigma|_K = grad u_bar - (f_K/2) (x - Mid(K)).
// Edge fluxes are read off per triangle; whether they coincide from both sides is
// the equivalence being tested, so no cross-check happens here (see the defect
// helper below).
RTField marini_reconstruction(const CRFunction& u_bar, const ScalarFn& f, const Mesh& mesh);

// max over interior edges of the two-sided normal-flux mismatch of the lifted field
double marini_conformity_defect(const CRFunction& u_bar, const ScalarFn& f, const Mesh& mesh);

// Raviart-Thomas mixed solve: (sigma, tau) + (u, div tau) = 0 and
// (div sigma, v) = (-f, v).
std::pair<RTField, P0Field> solve_rt_mixed(const Mesh& mesh, const ScalarFn& f,
                                           double tol = 1e-12);

struct PerturbationReport {
  double difference_norm = 0.0;  // broken-gradient distance between the two solves
  double bound = 0.0;            // (h/j_11)^2 |f|_1 with j_11 the first Bessel-J1 root
  double h = 0.0;
  bool pass = false;
};
// Checks ||grad_NC(u_CR - u_bar_CR)|| <= (h/3.8317)^2 |f|_1; the seminorm of f is an
// analytic input, not estimated.
PerturbationReport cr_perturbation_check(const Mesh& mesh, const ScalarFn& f,
                                         double f_h1_seminorm);

}  // namespace ncfem
