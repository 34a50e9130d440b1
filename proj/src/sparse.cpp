#include "ncfem/sparse.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace ncfem {
namespace {

using SpMat = Eigen::SparseMatrix<double>;

SpMat to_eigen(const SparseSymMatrix& A) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(A.entries.size());
  for (const auto& e : A.entries) trips.emplace_back(e.row, e.col, e.value);
  SpMat M(A.dim, A.dim);
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

void check_symmetric(const SpMat& M) {
  SpMat D = SpMat(M.transpose()) - M;
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (SpMat::InnerIterator it(D, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  for (int k = 0; k < M.outerSize(); ++k)
    for (SpMat::InnerIterator it(M, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  if (worst > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("sparse: accumulated matrix is not symmetric");
}

double inf_norm(const SpMat& M) {
  Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(M.rows());
  for (int k = 0; k < M.outerSize(); ++k)
    for (SpMat::InnerIterator it(M, k); it; ++it)
      rowsum[it.row()] += std::abs(it.value());
  return M.rows() > 0 ? rowsum.maxCoeff() : 0.0;
}

// normwise backward error (see SolveReport)
double rel_residual(const SpMat& M, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double denom = inf_norm(M) * x.norm() + b.norm();
  const double rn = (b - M * x).norm();
  return denom > 0.0 ? rn / denom : rn;
}

}  // namespace

std::pair<std::vector<double>, SolveReport> solve_spd(const SparseSymMatrix& A,
                                                      const std::vector<double>& b, double tol) {
  if (static_cast<int>(b.size()) != A.dim)
    throw std::invalid_argument("solve_spd: dimension mismatch");
  const SpMat M = to_eigen(A);
  check_symmetric(M);
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());

  Eigen::SimplicialLDLT<SpMat> ldlt(M);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("solve_spd: factorization failed (matrix not SPD?)");
  Eigen::VectorXd x = ldlt.solve(rhs);

  SolveReport rep;
  rep.method = "sparse-ldlt";
  rep.tolerance = tol;
  rep.relative_residual = rel_residual(M, x, rhs);
  while (rep.relative_residual > tol && rep.iterations < 4) {
    x += ldlt.solve(rhs - M * x);
    ++rep.iterations;
    rep.relative_residual = rel_residual(M, x, rhs);
  }
  rep.converged = rep.relative_residual <= tol;
  if (!rep.converged)
    throw std::runtime_error("solve_spd: residual " + std::to_string(rep.relative_residual) +
                             " above tolerance " + std::to_string(tol));
  return {std::vector<double>(x.data(), x.data() + x.size()), rep};
}

SaddleSolution solve_saddle(const SparseSymMatrix& A, const SparseRectMatrix& B,
                            const std::vector<double>& f, const std::vector<double>& g,
                            double tol) {
  const int ns = A.dim, nu = B.rows;
  if (B.cols != ns || static_cast<int>(f.size()) != ns || static_cast<int>(g.size()) != nu)
    throw std::invalid_argument("solve_saddle: dimension mismatch");
  check_symmetric(to_eigen(A));

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(A.entries.size() + 2 * B.entries.size());
  for (const auto& e : A.entries) trips.emplace_back(e.row, e.col, e.value);
  for (const auto& e : B.entries) {
    trips.emplace_back(ns + e.row, e.col, e.value);  // B
    trips.emplace_back(e.col, ns + e.row, e.value);  // B^T
  }
  SpMat M(ns + nu, ns + nu);
  M.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd rhs(ns + nu);
  for (int i = 0; i < ns; ++i) rhs[i] = f[i];
  for (int i = 0; i < nu; ++i) rhs[ns + i] = g[i];

  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(M);
  lu.factorize(M);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("solve_saddle: factorization failed (rank deficient?)");
  Eigen::VectorXd x = lu.solve(rhs);

  SolveReport rep;
  rep.method = "sparse-lu";
  rep.tolerance = tol;
  rep.relative_residual = rel_residual(M, x, rhs);
  while (rep.relative_residual > tol && rep.iterations < 4) {
    x += lu.solve(rhs - M * x);
    ++rep.iterations;
    rep.relative_residual = rel_residual(M, x, rhs);
  }
  rep.converged = rep.relative_residual <= tol;
  if (!rep.converged)
    throw std::runtime_error("solve_saddle: residual " + std::to_string(rep.relative_residual) +
                             " above tolerance " + std::to_string(tol));

  SaddleSolution sol;
  sol.sigma.assign(x.data(), x.data() + ns);
  sol.u.assign(x.data() + ns, x.data() + ns + nu);
  sol.report = rep;
  return sol;
}

}  // namespace ncfem
