#include "ncfem/study.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <utility>

#include "ncfem/elements.hpp"
#include "ncfem/plate.hpp"
#include "ncfem/poisson.hpp"
#include "ncfem/problems.hpp"
#include "ncfem/quadrature.hpp"
#include "ncfem/recovery.hpp"

namespace ncfem {

namespace {

const double kNoRate = std::numeric_limits<double>::quiet_NaN();

Point2 bary_point(const TriGeom& g, const std::array<double, 3>& lam) {
  return lam[0] * g.p[0] + lam[1] * g.p[1] + lam[2] * g.p[2];
}

template <class Exact, class Discrete>
double l2_error_impl(const Exact& exact, const Discrete& discrete, const Mesh& mesh,
                     int degree) {
  const QuadratureRule& rule = triangle_quadrature(degree);
  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const TriGeom& g = mesh.geom[t];
    double local = 0.0;
    for (const auto& node : rule.nodes) {
      const Point2 x = bary_point(g, node.lambda);
      local += node.weight * norm2(exact(x) - discrete(t, x));
    }
    acc += 2.0 * g.area * local;
  }
  return std::sqrt(acc);
}

// decay exponent between two levels; reduces to log2(e0/e1) when n1 = 2*n0
double rate_between(int n0, double e0, int n1, double e1) {
  return std::log(e0 / e1) / std::log(double(n1) / double(n0));
}

std::string fmt_err(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4E", v);
  return b;
}

std::string fmt_rate(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4f", v);
  return b;
}

}  // namespace

double l2_error(const std::function<Vec2(const Point2&)>& exact,
                const PiecewiseVectorField& discrete, const Mesh& mesh,
                int quadrature_degree) {
  return l2_error_impl(exact, discrete, mesh, quadrature_degree);
}

double l2_error(const std::function<Sym2(const Point2&)>& exact,
                const PiecewiseMatrixField& discrete, const Mesh& mesh,
                int quadrature_degree) {
  return l2_error_impl(exact, discrete, mesh, quadrature_degree);
}

ConvergenceTable run_poisson_study(const std::vector<int>& levels,
                                   const StudyOptions& options) {
  const ProblemSpec prob = square_sine_problem();
  ConvergenceTable table;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const int n = levels[k];
    const Mesh mesh = prob.build_mesh(n);
    const CRFunction u = solve_cr(mesh, prob.f, PoissonRhs::exact, options.solver_tol);
    const std::vector<Vec2> grads = nonconforming_gradients(u);
    const PiecewiseVectorField plain = [&grads](int t, const Point2&) { return grads[t]; };
    const MidpointVectorField rec = k_h(plain, mesh);
    const PiecewiseVectorField post = [&rec](int t, const Point2& x) {
      return rec.value(t, x);
    };
    // The reference baselines for this benchmark were sampled with the degree-3
    // rule; the rule stays fixed so the digits remain comparable.
    const int norm_degree = 3;
    ConvergenceRow row;
    row.label = std::to_string(2 * n) + "x" + std::to_string(n);
    row.elements = mesh.num_triangles();
    row.error_plain = l2_error(prob.grad_u, plain, mesh, norm_degree);
    row.error_post = l2_error(prob.grad_u, post, mesh, norm_degree);
    row.rate_plain = k == 0 ? kNoRate
                            : std::log2(table.rows[k - 1].error_plain / row.error_plain);
    row.rate_post = k == 0 ? kNoRate
                           : std::log2(table.rows[k - 1].error_post / row.error_post);
    table.rows.push_back(std::move(row));
  }
  return table;
}

ConvergenceTable run_plate_study(const std::vector<int>& levels,
                                 const StudyOptions& options) {
  const ProblemSpec prob = parallelogram_plate_problem();
  ConvergenceTable table;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const int n = levels[k];
    const Mesh mesh = prob.build_mesh(n);
    const MorleyFunction u = solve_morley(mesh, prob.f, PlateRhs::exact, options.solver_tol);
    const std::vector<Sym2> hess = nonconforming_hessians(u);
    const PiecewiseMatrixField plain = [&hess](int t, const Point2&) { return hess[t]; };
    const MidpointMatrixField rec = k_h(plain, mesh);
    const PiecewiseMatrixField post = [&rec](int t, const Point2& x) {
      return rec.value(t, x);
    };
    const int norm_degree = 6;
    ConvergenceRow row;
    row.label = std::to_string(2 * n) + "x" + std::to_string(n);
    row.elements = mesh.num_triangles();
    row.error_plain = l2_error(prob.hess_u, plain, mesh, norm_degree);
    row.error_post = l2_error(prob.hess_u, post, mesh, norm_degree);
    row.rate_plain = k == 0 ? kNoRate
                            : std::log2(table.rows[k - 1].error_plain / row.error_plain);
    row.rate_post = k == 0 ? kNoRate
                           : std::log2(table.rows[k - 1].error_post / row.error_post);
    table.rows.push_back(std::move(row));
  }
  return table;
}

IdentityReport run_identity_suite(const std::vector<int>& levels, unsigned seed,
                                  const StudyOptions& options) {
  IdentityReport report;
  auto upper = [&report](std::string name, double magnitude, double bound) {
    report.items.push_back({std::move(name), magnitude <= bound, magnitude, bound});
  };
  auto lower = [&report](std::string name, double magnitude, double bound) {
    report.items.push_back({std::move(name), magnitude >= bound, magnitude, bound});
  };

  const ProblemSpec membrane = square_sine_problem();
  const ProblemSpec plate = parallelogram_plate_problem();
  const double tol = options.solver_tol;

  // membrane: closed-form lift vs direct mixed solve, conformity, divergence
  for (int n : levels) {
    if (n > 16) continue;  // keep the direct saddle-point solves small
    const std::string tag = " (n=" + std::to_string(n) + ")";
    const Mesh mesh = membrane.build_mesh(n);
    const CRFunction u_bar = solve_cr(mesh, membrane.f, PoissonRhs::projected, tol);
    const RTField lifted = marini_reconstruction(u_bar, membrane.f, mesh);
    const auto [mixed_sigma, mixed_u] = solve_rt_mixed(mesh, membrane.f, tol);
    (void)mixed_u;
    double flux_gap = 0.0;
    for (int e = 0; e < mesh.num_edges(); ++e)
      flux_gap = std::max(flux_gap,
                          std::abs(lifted.edge_flux[e] - mixed_sigma.edge_flux[e]));
    upper("membrane equivalence, edge-flux gap" + tag, flux_gap, 1e-9);
    upper("lifted stress normal-flux conformity" + tag,
          marini_conformity_defect(u_bar, membrane.f, mesh), 1e-10);
    const P0Field fbar = project_p0(membrane.f, mesh);
    double div_lift = 0.0, div_mixed = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      div_lift = std::max(div_lift, std::abs(lifted.divergence(t) + fbar.values[t]));
      div_mixed = std::max(div_mixed,
                           std::abs(mixed_sigma.divergence(t) + fbar.values[t]));
    }
    upper("divergence identity, lifted path" + tag, div_lift, 1e-11);
    upper("divergence identity, mixed path" + tag, div_mixed, 1e-11);
  }

  // membrane: projected-data gap bound at every level, then its decay rate
  std::vector<int> membrane_ns;
  std::vector<double> membrane_gaps;
  for (int n : levels) {
    const Mesh mesh = membrane.build_mesh(n);
    const PerturbationReport pr =
        cr_perturbation_check(mesh, membrane.f, membrane.f_h1_seminorm);
    upper("projected-data gap bound (n=" + std::to_string(n) + ")", pr.difference_norm,
          pr.bound);
    membrane_ns.push_back(n);
    membrane_gaps.push_back(pr.difference_norm);
  }
  if (membrane_gaps.size() >= 2) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < membrane_gaps.size(); ++i)
      worst = std::min(worst, rate_between(membrane_ns[i - 1], membrane_gaps[i - 1],
                                           membrane_ns[i], membrane_gaps[i]));
    lower("projected-data gap decay rate (membrane)", worst, 1.9);
  }

  // plate: Hessian conformity and the two routes to the mixed pair
  for (int n : levels) {
    if (n > 8) continue;
    const std::string tag = " (n=" + std::to_string(n) + ")";
    const Mesh mesh = plate.build_mesh(n);
    const MorleyFunction u_bar =
        solve_morley(mesh, plate.f, PlateRhs::vertex_interpolated, tol);
    upper("broken Hessian normal-normal conformity" + tag, hhj_conformity_defect(u_bar),
          1e-10);
    const auto [sig_m, u_m] = hhj_from_morley(u_bar);
    const auto [sig_d, u_d] = solve_hhj_direct(mesh, plate.f, tol);
    double dof_gap = 0.0;
    for (int e = 0; e < mesh.num_edges(); ++e)
      dof_gap = std::max(dof_gap, std::abs(sig_m.edge_mnn[e] - sig_d.edge_mnn[e]));
    for (int v = 0; v < mesh.num_vertices(); ++v)
      dof_gap = std::max(dof_gap,
                         std::abs(u_m.vertex_values[v] - u_d.vertex_values[v]));
    upper("plate equivalence, edge/vertex DOF gap" + tag, dof_gap, 1e-9);
  }

  // plate: decay of the interpolated-data gap over the mid-size levels
  std::vector<int> plate_ns;
  std::vector<double> plate_gaps;
  for (int n : levels) {
    if (n < 4 || n > 32) continue;
    const Mesh mesh = plate.build_mesh(n);
    const PlateGapReport gr = plate_perturbation_check(mesh, plate.f, plate.f_l2_norm);
    plate_ns.push_back(n);
    plate_gaps.push_back(gr.difference_norm);
  }
  if (plate_gaps.size() >= 2) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < plate_gaps.size(); ++i)
      worst = std::min(worst, rate_between(plate_ns[i - 1], plate_gaps[i - 1],
                                           plate_ns[i], plate_gaps[i]));
    lower("interpolated-data gap decay rate (plate)", worst, 1.9);
  }

  // pairwise mean cancellation of the matrix interpolant on parallelogram patches
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (Domain dom : {Domain::square, Domain::parallelogram}) {
    const char* dom_name = dom == Domain::square ? "square" : "parallelogram";
    for (int n : {2, 4, 8}) {
      const Mesh mesh = build_domain_mesh(dom, n);
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        const Sym2 c0{unif(rng), unif(rng), unif(rng)};
        const Sym2 c1{unif(rng), unif(rng), unif(rng)};
        const Sym2 c2{unif(rng), unif(rng), unif(rng)};
        auto r = [&](const Point2& x) { return c0 + x.x1 * c1 + x.x2 * c2; };
        const HHJField interp = pi_hhj(r, mesh);
        const std::vector<Sym2> mats = hhj_matrices(interp);
        for (int e = 0; e < mesh.num_edges(); ++e) {
          const Edge& ed = mesh.edges[e];
          if (ed.is_boundary) continue;
          Sym2 integral{};
          double patch_area = 0.0, sup = 0.0;
          for (int side = 0; side < 2; ++side) {
            const int t = ed.triangle_ids[side];
            const TriGeom& g = mesh.geom[t];
            // components of r are affine, so the centroid value integrates exactly
            integral = integral + g.area * (r(g.centroid) - mats[t]);
            patch_area += g.area;
            for (int v = 0; v < 3; ++v) {
              const Sym2 val = r(g.p[v]);
              sup = std::max({sup, std::abs(val.a11), std::abs(val.a12),
                              std::abs(val.a22)});
            }
          }
          const double defect = std::max(
              {std::abs(integral.a11), std::abs(integral.a12), std::abs(integral.a22)});
          if (sup > 0.0) worst = std::max(worst, defect / (patch_area * sup));
        }
      }
      upper(std::string("pairwise mean cancellation, ") + dom_name +
                " (n=" + std::to_string(n) + ")",
            worst, 1e-13);
    }
  }

  // order probe for the recovered interpolants of smooth fields
  {
    const std::vector<int> probe_levels{8, 16, 32, 64};
    const RateReport vec_probe =
        recovery_order_probe(membrane.grad_u, probe_levels, Domain::square);
    const RateReport mat_probe =
        recovery_order_probe(plate.hess_u, probe_levels, Domain::parallelogram);
    double vec_dev = 0.0, mat_dev = 0.0;
    for (double r : vec_probe.rates) vec_dev = std::max(vec_dev, std::abs(r - 2.0));
    for (double r : mat_probe.rates) mat_dev = std::max(mat_dev, std::abs(r - 2.0));
    upper("recovered interpolant order, vector fields: max |rate - 2|", vec_dev, 0.1);
    upper("recovered interpolant order, matrix fields: max |rate - 2|", mat_dev, 0.1);
  }

  // recovery reproduces globally affine fields
  {
    const Mesh mesh = build_uniform_square_mesh(4);
    auto q = [](const Point2& x) {
      return Vec2{0.3 - 0.7 * x.x1 + 0.2 * x.x2, -1.1 + 0.5 * x.x1 + 0.9 * x.x2};
    };
    const RTField qi = pi_rt(q, mesh);
    const PiecewiseVectorField qf = [&qi](int t, const Point2& x) {
      return qi.value(t, x);
    };
    const MidpointVectorField rec = k_h(qf, mesh);
    const double err = l2_error(
        q, [&rec](int t, const Point2& x) { return rec.value(t, x); }, mesh, 6);
    upper("affine reproduction through recovery (vector)", err, 1e-12);
  }
  {
    const Mesh mesh = build_uniform_parallelogram_mesh(4);
    auto tau = [](const Point2& x) {
      return Sym2{0.4 + 0.2 * x.x1 - 0.3 * x.x2, -0.7 + 0.1 * x.x1 + 0.6 * x.x2,
                  1.2 - 0.5 * x.x1 + 0.8 * x.x2};
    };
    const HHJField ti = pi_hhj(tau, mesh);
    const std::vector<Sym2> mats = hhj_matrices(ti);
    const PiecewiseMatrixField tf = [&mats](int t, const Point2&) { return mats[t]; };
    const MidpointMatrixField rec = k_h(tf, mesh);
    const double err = l2_error(
        tau, [&rec](int t, const Point2& x) { return rec.value(t, x); }, mesh, 6);
    upper("affine reproduction through recovery (matrix)", err, 1e-12);

    const Sym2 tau0{0.7, -0.3, 0.4};
    const HHJField ci = pi_hhj([&tau0](const Point2&) { return tau0; }, mesh);
    const std::vector<Sym2> cmats = hhj_matrices(ci);
    double cdiff = 0.0;
    for (const Sym2& m : cmats) {
      const Sym2 d = m - tau0;
      cdiff = std::max({cdiff, std::abs(d.a11), std::abs(d.a12), std::abs(d.a22)});
    }
    upper("matrix interpolant reproduces constants", cdiff, 1e-13);
  }

  // elementwise Green identity: constant matrix against quadratics, so the
  // divergence term drops and edge midpoints integrate the traces exactly
  {
    const Mesh mesh = build_uniform_parallelogram_mesh(2);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Sym2 tau{unif(rng), unif(rng), unif(rng)};
      const std::array<double, 6> c{unif(rng), unif(rng), unif(rng),
                                    unif(rng), unif(rng), unif(rng)};
      const Sym2 hess{2 * c[3], c[4], 2 * c[5]};
      auto grad = [&c](const Point2& x) {
        return Vec2{c[1] + 2 * c[3] * x.x1 + c[4] * x.x2,
                    c[2] + c[4] * x.x1 + 2 * c[5] * x.x2};
      };
      for (int t = 0; t < mesh.num_triangles(); ++t) {
        const TriGeom& g = mesh.geom[t];
        const double lhs = g.area * contract(tau, hess);
        double rhs = 0.0;
        for (int i = 0; i < 3; ++i) {
          const Vec2 nu = g.normal_out[i];
          const Vec2 tv{-nu.x2, nu.x1};
          const Vec2 gm = grad(g.edge_mid[i]);
          rhs += g.edge_len[i] *
                 (mnn(tau, nu) * dot(gm, nu) + mnt(tau, nu, tv) * dot(gm, tv));
        }
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    upper("elementwise Green identity for constant matrix fields", worst, 1e-12);
  }

  // the plate load integrand is polynomial; two rules that are both exact for it
  // must agree to rounding
  {
    const Mesh mesh = plate.build_mesh(4);
    const QuadratureRule& r6 = triangle_quadrature(6);
    const QuadratureRule& r8 = triangle_quadrature(8);
    double max_diff = 0.0, scale = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const TriGeom& g = mesh.geom[t];
      const MorleyBasis basis = morley_basis(g);
      for (int i = 0; i < 6; ++i) {
        double i6 = 0.0, i8 = 0.0;
        for (const auto& node : r6.nodes) {
          const Point2 x = bary_point(g, node.lambda);
          i6 += node.weight * plate.f(x) * basis.value(i, x);
        }
        for (const auto& node : r8.nodes) {
          const Point2 x = bary_point(g, node.lambda);
          i8 += node.weight * plate.f(x) * basis.value(i, x);
        }
        max_diff = std::max(max_diff, std::abs(i6 - i8) * 2.0 * g.area);
        scale = std::max(scale, std::abs(i8) * 2.0 * g.area);
      }
    }
    upper("plate load vector, degree-6 vs degree-8 sampling (relative)",
          max_diff / scale, 1e-13);
  }

  report.all_pass = std::all_of(report.items.begin(), report.items.end(),
                                [](const IdentityCheck& it) { return it.pass; });
  return report;
}

std::string emit_table(const ConvergenceTable& table, TableFormat format) {
  std::string out;
  if (format == TableFormat::csv) {
    out = "level,elements,error_plain,rate_plain,error_post,rate_post\n";
    for (const ConvergenceRow& row : table.rows) {
      out += row.label + "," + std::to_string(row.elements) + "," +
             fmt_err(row.error_plain) + "," +
             (std::isnan(row.rate_plain) ? "" : fmt_rate(row.rate_plain)) + "," +
             fmt_err(row.error_post) + "," +
             (std::isnan(row.rate_post) ? "" : fmt_rate(row.rate_post)) + "\n";
    }
  } else {
    out = "| Number of elements | Error | Rate | Post-processed | Rate |\n";
    out += "|---:|---:|---:|---:|---:|\n";
    for (const ConvergenceRow& row : table.rows) {
      out += "| " + row.label + " | " + fmt_err(row.error_plain) + " | " +
             (std::isnan(row.rate_plain) ? "--" : fmt_rate(row.rate_plain)) + " | " +
             fmt_err(row.error_post) + " | " +
             (std::isnan(row.rate_post) ? "--" : fmt_rate(row.rate_post)) + " |\n";
    }
  }
  return out;
}

}  // namespace ncfem
