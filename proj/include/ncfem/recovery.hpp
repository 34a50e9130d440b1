#pragma once
#include <functional>
#include <vector>

#include "ncfem/fields.hpp"

namespace ncfem {

// Midpoint recovery. Interior edge midpoints get the average of the two one-sided
// values; boundary midpoints get the linear extrapolation 2*K_h(N_c) - K_h(P~)
// through the parallelogram partner, where both stencil values are the recovered
// (pass-one) interior values, not raw one-sided ones. Needs n >= 2.
MidpointVectorField k_h(const PiecewiseVectorField& field, const Mesh& mesh);
MidpointMatrixField k_h(const PiecewiseMatrixField& field, const Mesh& mesh);

// edge-flux-mean interpolant: DOF_e = int_e q . nu_e ds (4-point Gauss per edge)
RTField pi_rt(const std::function<Vec2(const Point2&)>& q, const Mesh& mesh);

// normal-normal-mean interpolant: DOF_e = mean over e of nu^T tau nu
HHJField pi_hhj(const std::function<Sym2(const Point2&)>& tau, const Mesh& mesh);

struct RateReport {
  std::vector<int> levels;
  std::vector<double> errors;
  std::vector<double> rates;  // rates[i] pairs levels[i] with levels[i+1]
};

// ||q - K_h Pi q|| across a level sequence (degree-6 norm quadrature)
RateReport recovery_order_probe(const std::function<Vec2(const Point2&)>& q,
                                const std::vector<int>& levels, Domain domain);
RateReport recovery_order_probe(const std::function<Sym2(const Point2&)>& tau,
                                const std::vector<int>& levels, Domain domain);

}  // namespace ncfem
