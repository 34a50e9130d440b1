#pragma once
#include <string>
#include <utility>
#include <vector>

namespace ncfem {

// Triplet-accumulating square symmetric matrix. Assembly calls add() for every
// (row, col) pair of a symmetric local matrix; duplicates are summed on finalize.
// Solvers verify the accumulated matrix really is symmetric.
struct SparseSymMatrix {
  int dim = 0;
  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> entries;

  explicit SparseSymMatrix(int d = 0) : dim(d) {}
  void add(int i, int j, double v) { entries.push_back({i, j, v}); }
};

struct SparseRectMatrix {
  int rows = 0, cols = 0;
  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> entries;

  SparseRectMatrix(int r = 0, int c = 0) : rows(r), cols(c) {}
  void add(int i, int j, double v) { entries.push_back({i, j, v}); }
};

struct SolveReport {
  std::string method;
  int iterations = 0;  // refinement sweeps for the direct paths
  // normwise backward error ||b - Ax|| / (||A||_inf ||x|| + ||b||): the scaling
  // keeps the bound attainable for stiffness matrices whose entries grow like
  // h^-2 or h^-4 while still certifying x solves a tol-close system
  double relative_residual = 0.0;
  double tolerance = 0.0;
  bool converged = false;
};

// Sparse LDL^T with iterative refinement; the residual in the report is recomputed
// from the inputs after the solve. Throws if the residual bound cannot be met.
std::pair<std::vector<double>, SolveReport> solve_spd(const SparseSymMatrix& A,
                                                      const std::vector<double>& b,
                                                      double tol = 1e-12);

// Symmetric indefinite block system [[A, B^T], [B, 0]] (sigma, u) = (f, g),
// solved as one sparse LU factorization. Throws on rank deficiency or a residual
// above tol.
struct SaddleSolution {
  std::vector<double> sigma;
  std::vector<double> u;
  SolveReport report;
};
SaddleSolution solve_saddle(const SparseSymMatrix& A, const SparseRectMatrix& B,
                            const std::vector<double>& f, const std::vector<double>& g,
                            double tol = 1e-12);

}  // namespace ncfem
