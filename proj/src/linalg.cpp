#include "limitfem/linalg.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <regex>
#include <string>

namespace limitfem {

SsorPreconditioner::SsorPreconditioner(const CompressedMatrix& a, double omega)
    : a_(a), omega_(omega), diag_(a.size()) {
  if (!(omega > 0.0 && omega < 2.0)) {
    throw std::invalid_argument("SSOR relaxation must lie in (0, 2), got " + std::to_string(omega));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    diag_[i] = a.diagonal(i);
    if (!(diag_[i] > 0.0)) {
      throw LinearSolverError("SSOR needs a positive diagonal; row " + std::to_string(i) +
                              " has " + std::to_string(diag_[i]));
    }
  }
}

void SsorPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
  const auto offs = a_.row_offsets();
  const auto cols = a_.column_indices();
  const auto vals = a_.values();
  const std::size_t n = a_.size();

  // (D + wL) y = r
  for (std::size_t i = 0; i < n; ++i) {
    double s = r[i];
    for (std::size_t k = offs[i]; k < offs[i + 1] && cols[k] < i; ++k) s -= omega_ * vals[k] * z[cols[k]];
    z[i] = s / diag_[i];
  }
  for (std::size_t i = 0; i < n; ++i) z[i] *= diag_[i];
  // (D + wU) z = D y
  for (std::size_t ii = n; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t k = offs[ii + 1]; k-- > offs[ii] && cols[k] > ii;) s -= omega_ * vals[k] * z[cols[k]];
    z[ii] = s / diag_[ii];
  }
  const double scale = omega_ * (2.0 - omega_);
  for (std::size_t i = 0; i < n; ++i) z[i] *= scale;
}

std::vector<double> SsorPreconditioner::apply(std::span<const double> r) const {
  std::vector<double> z(r.size());
  apply(r, z);
  return z;
}

CgResult cg_ssor(const CompressedMatrix& a, std::span<const double> b, const CgOptions& options) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("right-hand side size does not match matrix");

  CgResult result;
  result.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    result.converged = true;
    return result;
  }

  const SsorPreconditioner precond(a, options.omega);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), ap(n);
  precond.apply(r, z);
  p = z;
  double rz = dot(r, z);

  result.relative_residual = 1.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      throw LinearSolverError("conjugate gradient breakdown at iteration " + std::to_string(it) +
                              ": p.Ap = " + std::to_string(pap));
    }
    const double step = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    result.iterations = it;
    result.relative_residual = norm2(r) / bnorm;
    if (options.observer) options.observer(it, result.x);
    if (result.relative_residual <= options.tol) {
      result.converged = true;
      break;
    }
    precond.apply(r, z);
    const double rz_next = dot(r, z);
    const double ratio = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + ratio * p[i];
  }
  return result;
}

std::vector<double> sparse_direct_solve(const CompressedMatrix& a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("right-hand side size does not match matrix");
  if (n == 0) return {};

  using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(a.nonzeros());
  const auto offs = a.row_offsets();
  const auto cols = a.column_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(cols[k]), vals[k]);
    }
  }
  SpMat m(static_cast<int>(n), static_cast<int>(n));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();

  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    const std::string msg = lu.lastErrorMessage();
    long pivot = -1;
    std::smatch match;
    if (std::regex_search(msg, match, std::regex("(\\d+)\\s*$"))) pivot = std::stol(match[1]);
    throw SingularMatrixError("sparse LU failed: " + msg, pivot);
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw SingularMatrixError("sparse LU solve produced a non-finite result", -1);
  }
  return {x.data(), x.data() + n};
}

}  // namespace limitfem
