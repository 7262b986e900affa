#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitfem/assembly.hpp"
#include "limitfem/constitutive.hpp"
#include "limitfem/fem.hpp"
#include "limitfem/mesh.hpp"

namespace limitfem {

enum class Domain { Example1, Example2 };
enum class TemperatureCase { Case1, Case2 };
enum class Model { Linear, Nonlinear };
enum class MechanicsSolver { Direct, CgSsor };

const char* to_string(Domain d);
const char* to_string(TemperatureCase c);
const char* to_string(Model m);

struct NewtonConfig {
  double tol = 1e-8;
  int max_iter = 50;
  /// CG is offered for experiments only; the tangent can be badly
  /// conditioned, so the direct solver is the default.
  MechanicsSolver linear_solver = MechanicsSolver::Direct;

  void validate() const;
};

struct SolutionState {
  std::vector<double> theta;           // one value per node
  std::vector<double> u;               // interleaved (u_x, u_y) per node
  std::vector<double> newton_history;  // residual norm after each iteration
  bool converged = false;

  int iterations() const { return static_cast<int>(newton_history.size()); }
};

/// Newton iteration that could not proceed, e.g. lost coercivity.
class NewtonError : public std::runtime_error {
 public:
  NewtonError(int iteration, const std::string& what)
      : std::runtime_error("Newton iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

struct HeatSolveInfo {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Temperature on Gamma1: 100 (Case1) or 500 x (1 - x) (Case2).
double bottom_temperature(TemperatureCase c, double x);

std::vector<DirichletCondition> temperature_conditions(TemperatureCase c);

/// u_y = 0 on Gamma1 and u = (0, 1) on Gamma3; Gamma3 wins at shared dofs.
std::vector<DirichletCondition> displacement_conditions();

/// Heat solve with SSOR-CG at relative tolerance 1e-12.
std::vector<double> solve_heat(const Mesh& mesh, const MaterialParams& params, const DofMap& theta_dofs,
                               HeatSolveInfo* info = nullptr);
std::vector<double> solve_heat(const Mesh& mesh, const MaterialParams& params, TemperatureCase c,
                               HeatSolveInfo* info = nullptr);

/// Newton iteration for the mechanics with the constraints of `u_dofs`.
/// The initial iterate solves the beta = 0 problem with the full
/// boundary data; later increments vanish on constrained dofs.
/// `initial_forcing`, when set, replaces `forcing` in that linear solve.
SolutionState solve_mechanics(const Mesh& mesh, const MaterialParams& params, const DofMap& u_dofs,
                              std::span<const double> theta, const NewtonConfig& config,
                              const BodyForce& forcing = nullptr, const BodyForce& initial_forcing = nullptr);

/// Mechanics with the standard tensile boundary data.
SolutionState solve_mechanics(const Mesh& mesh, const MaterialParams& params,
                              std::span<const double> theta, const NewtonConfig& config);

}  // namespace limitfem
