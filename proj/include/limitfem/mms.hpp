#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "limitfem/constitutive.hpp"
#include "limitfem/mesh.hpp"
#include "limitfem/solver.hpp"

namespace limitfem {

using VectorField = std::function<std::array<double, 2>(Point2)>;

/// Exact displacement u*(x, y) = (sin x sin y, cos x cos y) with the
/// body force that makes it solve -div L(eps(u*)) = f.
struct ManufacturedCase {
  MaterialParams params{1.0, 1.0, 1.0, 0.5, 20.0, -10.0, 0.1};

  static std::array<double, 2> displacement(Point2 p);
  /// grad[i][j] = d u_i / d x_j
  static std::array<std::array<double, 2>, 2> gradient(Point2 p);
  /// hess[i][j][k] = d^2 u_i / d x_j d x_k
  static std::array<std::array<std::array<double, 2>, 2>, 2> hessian(Point2 p);

  SymTensor2 strain(Point2 p) const;
  SymTensor2 stress(Point2 p) const;

  /// Largest beta |E^1/2[eps(u*)]| on an (n+1)^2 sample grid of the unit square.
  double max_limit_ratio(int n = 200) const;
};

/// -div L(eps(u*)) by the chain rule: the derivative of the stress along
/// x_j is the constitutive tangent applied to d eps / d x_j.
std::array<double, 2> manufactured_forcing(const ManufacturedCase& mc, Point2 p);

/// sqrt(int |u_h - u*|^2) with a 3x3 Gauss rule.
double l2_error(const Mesh& mesh, std::span<const double> u_h, const VectorField& exact);

struct ConvergenceRow {
  int cycle = 0;
  double h = 0.0;
  double l2_error = 0.0;
  std::optional<double> rate;
  int newton_iterations = 0;
  bool converged = false;
};

/// Cycle c solves on the uniform mesh with c refinements (h = 2^-c),
/// Dirichlet trace of u* on the whole boundary and zero temperature.
std::vector<ConvergenceRow> convergence_study(int cycles, const ManufacturedCase& mc = {},
                                              const NewtonConfig& newton = {});

void print_convergence_table(const std::vector<ConvergenceRow>& rows, std::ostream& out);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::filesystem::path& path);

}  // namespace limitfem
