#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "limitfem/constitutive.hpp"
#include "limitfem/fem.hpp"
#include "limitfem/mesh.hpp"
#include "limitfem/sparse.hpp"

namespace limitfem {

/// One linear system before or after Dirichlet elimination.
struct SparseSystem {
  CompressedMatrix matrix;
  std::vector<double> rhs;
};

/// Volume load added to the mechanics right-hand side as the integral of f . phi_i.
using BodyForce = std::function<std::array<double, 2>(Point2)>;

/// A quadrature point where beta |E^1/2[eps]| reached the strain limit.
class CoercivityError : public std::runtime_error {
 public:
  CoercivityError(std::size_t cell, double energy_norm, double beta);
  std::size_t cell() const { return cell_; }
  double energy_norm() const { return energy_norm_; }

 private:
  std::size_t cell_;
  double energy_norm_;
};

/// Zero matrix with the nodal coupling pattern of `mesh` for a field of `kind`.
CompressedMatrix make_pattern(const Mesh& mesh, FieldKind kind);

/// Strain of the nodal displacement field `u` at a mapped point of `cell`.
SymTensor2 strain_at(const Mesh& mesh, std::size_t cell, const MappedPoint& mp,
                     std::span<const double> u);

/// Stiffness k grad(phi_i).grad(phi_j) and load g phi_i, no constraints applied.
/// Throws std::invalid_argument when the temperature has no Dirichlet dof.
SparseSystem assemble_heat(const Mesh& mesh, const MaterialParams& params, const DofMap& theta_dofs);

/// Newton system at the iterate `u_n`:
///   matrix  int DL(eps(u_n))[eps(phi_j)] : eps(phi_i)
///   rhs    -int alpha grad(theta) . phi_i - int L(eps(u_n)) : eps(phi_i) + int f . phi_i
/// `theta` is a nodal temperature field (empty means zero).
SparseSystem assemble_newton_system(const Mesh& mesh, const MaterialParams& params,
                                    const DofMap& u_dofs, std::span<const double> u_n,
                                    std::span<const double> theta,
                                    const BodyForce& forcing = nullptr);

/// Nonlinear residual int L(eps(u)) : eps(phi_i) + int alpha grad(theta) . phi_i - int f . phi_i
/// for every dof, assembled without forming any matrix.
std::vector<double> assemble_residual(const Mesh& mesh, const MaterialParams& params,
                                      const DofMap& u_dofs, std::span<const double> u,
                                      std::span<const double> theta,
                                      const BodyForce& forcing = nullptr);

/// Euclidean norm of assemble_residual over unconstrained dofs.
double assemble_residual_norm(const Mesh& mesh, const MaterialParams& params, const DofMap& u_dofs,
                              std::span<const double> u, std::span<const double> theta,
                              const BodyForce& forcing = nullptr);

/// Symmetric elimination of constrained dofs: their columns move to the
/// right-hand side, their rows become identity rows holding `values[dof]`.
void apply_dirichlet(SparseSystem& system, const DofMap& dofs, std::span<const double> values);

/// apply_dirichlet with the prescribed values stored in `dofs`.
void apply_dirichlet(SparseSystem& system, const DofMap& dofs);

/// Largest beta |E^1/2[eps(u)]| over the 2x2 Gauss points of all cells.
double strain_certificate(const Mesh& mesh, const MaterialParams& params, std::span<const double> u);

}  // namespace limitfem
