// Release checks for the full benchmark suite: the two convergence tables, the
// discrete equivalences, the explicit perturbation bounds and the recovery
// operator's order. Each check prints one [PASS]/[FAIL] line; the exit status
// is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include "ncfem/plate.hpp"
#include "ncfem/poisson.hpp"
#include "ncfem/problems.hpp"
#include "ncfem/recovery.hpp"
#include "ncfem/study.hpp"

using namespace ncfem;

namespace {

int g_failures = 0;

void report(int index, const char* what, bool pass, double detail) {
  std::printf("[%s] %2d. %-64s (worst %.3E)\n", pass ? "PASS" : "FAIL", index, what,
              detail);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TableCheck {
  double worst_rel_plain = 0.0;
  double worst_rel_post = 0.0;
  double worst_rate_dev = 0.0;
};

TableCheck compare_table(const ConvergenceTable& got, const std::vector<double>& plain,
                         const std::vector<double>& post,
                         const std::vector<double>& rate_plain,
                         const std::vector<double>& rate_post) {
  TableCheck c;
  for (std::size_t i = 0; i < got.rows.size(); ++i) {
    c.worst_rel_plain = std::max(
        c.worst_rel_plain, std::abs(got.rows[i].error_plain - plain[i]) / plain[i]);
    c.worst_rel_post = std::max(
        c.worst_rel_post, std::abs(got.rows[i].error_post - post[i]) / post[i]);
    if (i > 0) {
      c.worst_rate_dev = std::max(
          c.worst_rate_dev, std::abs(got.rows[i].rate_plain - rate_plain[i - 1]));
      c.worst_rate_dev = std::max(
          c.worst_rate_dev, std::abs(got.rows[i].rate_post - rate_post[i - 1]));
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<int> levels{4, 8, 16, 32, 64, 128};
  const ProblemSpec membrane = square_sine_problem();
  const ProblemSpec plate = parallelogram_plate_problem();

  // 1. membrane convergence history against the reference baselines
  auto t0 = std::chrono::steady_clock::now();
  const ConvergenceTable poisson = run_poisson_study(levels);
  const double poisson_time = seconds_since(t0);
  {
    const TableCheck c = compare_table(
        poisson, {6.4104e-01, 3.2395e-01, 1.6241e-01, 8.1259e-02, 4.0636e-02, 2.0319e-02},
        {2.2880e-01, 5.1669e-02, 1.2286e-02, 2.9936e-03, 7.3852e-04, 1.8337e-04},
        {0.9847, 0.9961, 0.9990, 0.9998, 0.9999},
        {2.1467, 2.0723, 2.0370, 2.0192, 2.0098});
    const bool pass = poisson.rows.size() == 6 && c.worst_rel_plain <= 0.01 &&
                      c.worst_rel_post <= 0.02 && c.worst_rate_dev <= 0.05 &&
                      poisson_time < 60.0;
    std::printf("    membrane study: %.1f s\n", poisson_time);
    report(1, "membrane error table: plain <=1%, post <=2%, rates +-0.05",
           pass, std::max({c.worst_rel_plain, c.worst_rel_post, c.worst_rate_dev}));
  }

  // 2. plate convergence history against the reference baselines
  t0 = std::chrono::steady_clock::now();
  const ConvergenceTable plate_tbl = run_plate_study(levels);
  const double plate_time = seconds_since(t0);
  {
    const TableCheck c = compare_table(
        plate_tbl, {1.2599e+00, 8.5516e-01, 4.6008e-01, 2.3428e-01, 1.1768e-01, 5.8909e-02},
        {7.6681e-01, 2.7553e-01, 7.3946e-02, 1.8627e-02, 4.6311e-03, 1.1506e-03},
        {0.5591, 0.8943, 0.9736, 0.9934, 0.9983},
        {1.4766, 1.8977, 1.9891, 2.0080, 2.0090});
    const bool pass = plate_tbl.rows.size() == 6 && c.worst_rel_plain <= 0.02 &&
                      c.worst_rel_post <= 0.03 && c.worst_rate_dev <= 0.05 &&
                      plate_time < 300.0;
    std::printf("    plate study: %.1f s\n", plate_time);
    report(2, "plate error table: plain <=2%, post <=3%, rates +-0.05",
           pass, std::max({c.worst_rel_plain, c.worst_rel_post, c.worst_rate_dev}));
  }

  // 3. post-processed rates at the three finest level pairs
  {
    double floor_rate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 3; i < 6; ++i) {
      floor_rate = std::min(floor_rate, poisson.rows[i].rate_post);
      floor_rate = std::min(floor_rate, plate_tbl.rows[i].rate_post);
    }
    report(3, "post-processed rates (3 finest pairs) >= 1.5 and >= 1.9",
           floor_rate >= 1.5 && floor_rate >= 1.9, floor_rate);
  }

  // 4 & 7. closed-form lift vs direct mixed solve; exact divergence identity
  double div_defect = 0.0;  // reported as check 7 below
  {
    double flux_gap = 0.0;
    for (int n : {2, 4, 8, 16}) {
      const Mesh mesh = membrane.build_mesh(n);
      const CRFunction u_bar = solve_cr(mesh, membrane.f, PoissonRhs::projected);
      const RTField lifted = marini_reconstruction(u_bar, membrane.f, mesh);
      const auto [mixed, u_mixed] = solve_rt_mixed(mesh, membrane.f);
      (void)u_mixed;
      for (int e = 0; e < mesh.num_edges(); ++e)
        flux_gap = std::max(flux_gap,
                            std::abs(lifted.edge_flux[e] - mixed.edge_flux[e]));
      const P0Field fbar = project_p0(membrane.f, mesh);
      for (int t = 0; t < mesh.num_triangles(); ++t) {
        div_defect = std::max(div_defect,
                              std::abs(lifted.divergence(t) + fbar.values[t]));
        div_defect = std::max(div_defect,
                              std::abs(mixed.divergence(t) + fbar.values[t]));
      }
    }
    report(4, "membrane equivalence: lifted vs mixed edge DOFs <= 1e-8", flux_gap <= 1e-8,
           flux_gap);
  }

  // 5. the two routes to the plate mixed pair agree
  {
    double dof_gap = 0.0;
    for (int n : {2, 4, 8}) {
      const Mesh mesh = plate.build_mesh(n);
      const MorleyFunction u_bar =
          solve_morley(mesh, plate.f, PlateRhs::vertex_interpolated);
      const auto [sig_m, u_m] = hhj_from_morley(u_bar);
      const auto [sig_d, u_d] = solve_hhj_direct(mesh, plate.f);
      for (int e = 0; e < mesh.num_edges(); ++e)
        dof_gap = std::max(dof_gap, std::abs(sig_m.edge_mnn[e] - sig_d.edge_mnn[e]));
      for (int v = 0; v < mesh.num_vertices(); ++v)
        dof_gap = std::max(dof_gap,
                           std::abs(u_m.vertex_values[v] - u_d.vertex_values[v]));
    }
    report(5, "plate equivalence: Morley-derived vs direct mixed DOFs <= 1e-8",
           dof_gap <= 1e-8, dof_gap);
  }

  // 6. explicit perturbation bound with the analytic |f|_1
  {
    bool pass = true;
    double worst_ratio = 0.0;
    for (int n : levels) {
      const Mesh mesh = membrane.build_mesh(n);
      const PerturbationReport pr =
          cr_perturbation_check(mesh, membrane.f, membrane.f_h1_seminorm);
      pass = pass && pr.pass;
      worst_ratio = std::max(worst_ratio, pr.difference_norm / pr.bound);
    }
    report(6, "gradient gap <= (h/3.8317)^2 |f|_1 at every level", pass, worst_ratio);
  }

  report(7, "divergence identity div(sigma) = -mean(f), both paths, <= 1e-11",
         div_defect <= 1e-11, div_defect);

  // 8. local mean cancellation of the matrix interpolant on edge patches
  {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst = 0.0;
    for (Domain dom : {Domain::square, Domain::parallelogram})
      for (int n : {2, 4, 8}) {
        const Mesh mesh = build_domain_mesh(dom, n);
        for (int trial = 0; trial < 20; ++trial) {
          const Sym2 c0{unif(rng), unif(rng), unif(rng)};
          const Sym2 c1{unif(rng), unif(rng), unif(rng)};
          const Sym2 c2{unif(rng), unif(rng), unif(rng)};
          auto r = [&](const Point2& x) { return c0 + x.x1 * c1 + x.x2 * c2; };
          const HHJField interp = pi_hhj(r, mesh);
          const std::vector<Sym2> mats = hhj_matrices(interp);
          for (int e = 0; e < mesh.num_edges(); ++e) {
            if (mesh.edges[e].is_boundary) continue;
            Sym2 integral{};
            double patch_area = 0.0, sup = 0.0;
            for (int side = 0; side < 2; ++side) {
              const int t = mesh.edges[e].triangle_ids[side];
              const TriGeom& g = mesh.geom[t];
              integral = integral + g.area * (r(g.centroid) - mats[t]);
              patch_area += g.area;
              for (int v = 0; v < 3; ++v) {
                const Sym2 val = r(g.p[v]);
                sup = std::max({sup, std::abs(val.a11), std::abs(val.a12),
                                std::abs(val.a22)});
              }
            }
            const double defect = std::max({std::abs(integral.a11),
                                            std::abs(integral.a12),
                                            std::abs(integral.a22)});
            if (sup > 0.0) worst = std::max(worst, defect / (patch_area * sup));
          }
        }
      }
    report(8, "patch integral of r - Pi(r) vanishes for P1 matrix fields (<= 1e-13)",
           worst <= 1e-13, worst);
  }

  // 9. recovery order on smooth fields, exactness on affine ones
  {
    const std::vector<int> probe_levels{8, 16, 32, 64};
    const RateReport vec_probe =
        recovery_order_probe(membrane.grad_u, probe_levels, Domain::square);
    const RateReport mat_probe =
        recovery_order_probe(plate.hess_u, probe_levels, Domain::parallelogram);
    double dev = 0.0;
    for (double r : vec_probe.rates) dev = std::max(dev, std::abs(r - 2.0));
    for (double r : mat_probe.rates) dev = std::max(dev, std::abs(r - 2.0));

    const Mesh msq = build_uniform_square_mesh(4);
    auto q = [](const Point2& x) {
      return Vec2{0.3 - 0.7 * x.x1 + 0.2 * x.x2, -1.1 + 0.5 * x.x1 + 0.9 * x.x2};
    };
    const RTField qi = pi_rt(q, msq);
    const MidpointVectorField qrec =
        k_h([&qi](int t, const Point2& x) { return qi.value(t, x); }, msq);
    double affine_err = l2_error(
        q, [&qrec](int t, const Point2& x) { return qrec.value(t, x); }, msq, 6);

    const Mesh mpa = build_uniform_parallelogram_mesh(4);
    auto tau = [](const Point2& x) {
      return Sym2{0.4 + 0.2 * x.x1 - 0.3 * x.x2, -0.7 + 0.1 * x.x1 + 0.6 * x.x2,
                  1.2 - 0.5 * x.x1 + 0.8 * x.x2};
    };
    const HHJField ti = pi_hhj(tau, mpa);
    const std::vector<Sym2> mats = hhj_matrices(ti);
    const MidpointMatrixField trec =
        k_h([&mats](int t, const Point2&) { return mats[t]; }, mpa);
    affine_err = std::max(
        affine_err,
        l2_error(tau, [&trec](int t, const Point2& x) { return trec.value(t, x); },
                 mpa, 6));
    report(9, "recovered interpolants: rates 2.0 +- 0.1, affine fields exact",
           dev <= 0.1 && affine_err <= 1e-12, std::max(dev, affine_err));
  }

  // 10. decay of the gap between the two plate right-hand sides
  {
    std::vector<double> gaps;
    std::vector<int> ns{4, 8, 16, 32};
    for (int n : ns) {
      const Mesh mesh = plate.build_mesh(n);
      gaps.push_back(plate_perturbation_check(mesh, plate.f, plate.f_l2_norm)
                         .difference_norm);
    }
    double floor_rate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < gaps.size(); ++i)
      floor_rate = std::min(floor_rate, std::log2(gaps[i - 1] / gaps[i]));
    report(10, "plate right-hand-side gap decays with rate >= 1.9",
           floor_rate >= 1.9, floor_rate);
  }

  std::printf("%d of 10 checks failed\n", g_failures);
  return g_failures;
}
