#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "limitfem/sparse.hpp"

namespace limitfem {

class LinearSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public LinearSolverError {
 public:
  SingularMatrixError(const std::string& what, long pivot)
      : LinearSolverError(what), pivot_(pivot) {}
  /// Offending pivot/column index, -1 when the backend does not report one.
  long pivot() const { return pivot_; }

 private:
  long pivot_;
};

/// Symmetric SOR preconditioner
///   M = (D + wL) D^-1 (D + wU) / (w (2 - w)).
class SsorPreconditioner {
 public:
  SsorPreconditioner(const CompressedMatrix& a, double omega);
  void apply(std::span<const double> r, std::span<double> z) const;
  std::vector<double> apply(std::span<const double> r) const;

 private:
  const CompressedMatrix& a_;
  double omega_;
  std::vector<double> diag_;
};

struct CgOptions {
  double tol = 1e-12;  // relative to |b|
  int max_iter = 10000;
  double omega = 1.0;
  /// Called after every iteration with the iteration count and iterate.
  std::function<void(int, std::span<const double>)> observer;
};

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// SSOR-preconditioned conjugate gradients for SPD matrices. Stagnation
/// at max_iter is reported through `converged`; a non-positive curvature
/// p.Ap throws LinearSolverError.
CgResult cg_ssor(const CompressedMatrix& a, std::span<const double> b, const CgOptions& options = {});

/// Sparse LU with fill-reducing column ordering.
std::vector<double> sparse_direct_solve(const CompressedMatrix& a, std::span<const double> b);

}  // namespace limitfem
