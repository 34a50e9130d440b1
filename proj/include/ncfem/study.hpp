#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ncfem/fields.hpp"
#include "ncfem/mesh.hpp"

namespace ncfem {

// Broken L2 distance between an exact field and a piecewise discrete field,
// integrated triangle-by-triangle with a symmetric rule of the given degree.
// Matrix fields use the Frobenius inner product (off-diagonal counted twice).
double l2_error(const std::function<Vec2(const Point2&)>& exact,
                const PiecewiseVectorField& discrete, const Mesh& mesh,
                int quadrature_degree = 6);
double l2_error(const std::function<Sym2(const Point2&)>& exact,
                const PiecewiseMatrixField& discrete, const Mesh& mesh,
                int quadrature_degree = 6);

struct ConvergenceRow {
  std::string label;       // grid size as "2n x n", e.g. "8x4"
  long elements = 0;       // triangle count
  double error_plain = 0;  // broken error of the raw discrete field
  double rate_plain = 0;   // log2(previous/current); NaN on the first row
  double error_post = 0;   // error after midpoint recovery
  double rate_post = 0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

struct StudyOptions {
  double solver_tol = 1e-12;
};

// Gradient-error history for the membrane benchmark on the unit square,
// one row per mesh level n (n-by-n cells, each split in two).
ConvergenceTable run_poisson_study(const std::vector<int>& levels,
                                   const StudyOptions& options = {});

// Hessian-error history for the clamped-plate benchmark on the rhombic domain.
ConvergenceTable run_plate_study(const std::vector<int>& levels,
                                 const StudyOptions& options = {});

struct IdentityCheck {
  std::string name;
  bool pass = false;
  double magnitude = 0;  // observed value (defect size, or measured rate)
  double threshold = 0;  // bound it was compared against
};

struct IdentityReport {
  std::vector<IdentityCheck> items;
  bool all_pass = false;
};

// Structural checks: discrete equivalences between the nonconforming and
// mixed formulations, divergence/conformity identities, perturbation bounds,
// local mean cancellation for the matrix interpolant, and the recovery
// operator's order probe. `levels` controls which meshes the equivalence and
// bound checks visit (direct saddle-point solves are capped internally).
IdentityReport run_identity_suite(const std::vector<int>& levels,
                                  unsigned seed = 42,
                                  const StudyOptions& options = {});

enum class TableFormat { csv, markdown };

// Render a table. CSV: fixed header row, %.4E errors, %.4f rates, empty rate
// cells on the first row. Markdown: same data, "--" placeholders.
std::string emit_table(const ConvergenceTable& table, TableFormat format);

}  // namespace ncfem
