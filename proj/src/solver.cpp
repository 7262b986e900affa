#include "limitfem/solver.hpp"

#include "limitfem/linalg.hpp"

namespace limitfem {

namespace {

constexpr double kHeatTol = 1e-12;
constexpr double kMechanicsCgTol = 1e-12;

std::vector<double> solve_linear(const SparseSystem& sys, MechanicsSolver kind) {
  if (kind == MechanicsSolver::Direct) return sparse_direct_solve(sys.matrix, sys.rhs);
  CgOptions opts;
  opts.tol = kMechanicsCgTol;
  opts.max_iter = 20 * static_cast<int>(sys.rhs.size()) + 100;
  auto res = cg_ssor(sys.matrix, sys.rhs, opts);
  if (!res.converged) {
    throw LinearSolverError("CG on the mechanics system stalled at relative residual " +
                            std::to_string(res.relative_residual));
  }
  return std::move(res.x);
}

/// One Newton increment at `u`; `lift` holds the increment values on constrained dofs.
std::vector<double> newton_increment(const Mesh& mesh, const MaterialParams& params,
                                     const DofMap& dofs, std::span<const double> u,
                                     std::span<const double> theta, const BodyForce& forcing,
                                     std::span<const double> lift, MechanicsSolver kind) {
  auto sys = assemble_newton_system(mesh, params, dofs, u, theta, forcing);
  apply_dirichlet(sys, dofs, lift);
  return solve_linear(sys, kind);
}

}  // namespace

const char* to_string(Domain d) { return d == Domain::Example1 ? "example1" : "example2"; }
const char* to_string(TemperatureCase c) { return c == TemperatureCase::Case1 ? "case1" : "case2"; }
const char* to_string(Model m) { return m == Model::Linear ? "linear" : "nonlinear"; }

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("Newton tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("Newton iteration limit must be at least 1");
}

double bottom_temperature(TemperatureCase c, double x) {
  return c == TemperatureCase::Case1 ? 100.0 : 500.0 * x * (1.0 - x);
}

std::vector<DirichletCondition> temperature_conditions(TemperatureCase c) {
  return {{BoundaryTag::Gamma1, {true, false},
           [c](Point2 p, int) { return bottom_temperature(c, p.x); }, 0}};
}

std::vector<DirichletCondition> displacement_conditions() {
  return {
      {BoundaryTag::Gamma3, {true, true}, [](Point2, int comp) { return comp == 0 ? 0.0 : 1.0; }, 2},
      {BoundaryTag::Gamma1, {false, true}, [](Point2, int) { return 0.0; }, 1},
  };
}

std::vector<double> solve_heat(const Mesh& mesh, const MaterialParams& params, const DofMap& theta_dofs,
                               HeatSolveInfo* info) {
  auto sys = assemble_heat(mesh, params, theta_dofs);
  apply_dirichlet(sys, theta_dofs);
  CgOptions opts;
  opts.tol = kHeatTol;
  opts.max_iter = 10 * static_cast<int>(mesh.num_nodes()) + 100;
  auto res = cg_ssor(sys.matrix, sys.rhs, opts);
  if (info) *info = {res.iterations, res.relative_residual};
  if (!res.converged) {
    throw LinearSolverError("heat CG did not converge: relative residual " +
                            std::to_string(res.relative_residual) + " after " +
                            std::to_string(res.iterations) + " iterations");
  }
  // Identity rows are only solved to the CG tolerance; restore exact data.
  for (std::size_t d : theta_dofs.constrained_dofs()) res.x[d] = theta_dofs.prescribed_value(d);
  return std::move(res.x);
}

std::vector<double> solve_heat(const Mesh& mesh, const MaterialParams& params, TemperatureCase c,
                               HeatSolveInfo* info) {
  const auto bcs = temperature_conditions(c);
  return solve_heat(mesh, params, build_dof_map(mesh, FieldKind::Scalar, bcs), info);
}

SolutionState solve_mechanics(const Mesh& mesh, const MaterialParams& params, const DofMap& u_dofs,
                              std::span<const double> theta, const NewtonConfig& config,
                              const BodyForce& forcing, const BodyForce& initial_forcing) {
  config.validate();
  params.validate();

  SolutionState state;
  state.theta.assign(theta.begin(), theta.end());
  state.u.assign(u_dofs.num_dofs(), 0.0);

  // Initial iterate: linear problem with the full boundary data.
  std::vector<double> lift(u_dofs.num_dofs(), 0.0);
  for (std::size_t d : u_dofs.constrained_dofs()) lift[d] = u_dofs.prescribed_value(d);
  {
    const auto du = newton_increment(mesh, params.linearized(), u_dofs, state.u, theta,
                                     initial_forcing ? initial_forcing : forcing, lift, config.linear_solver);
    for (std::size_t i = 0; i < du.size(); ++i) state.u[i] += du[i];
  }

  const std::vector<double> zero_lift(u_dofs.num_dofs(), 0.0);
  for (int it = 1; it <= config.max_iter; ++it) {
    try {
      const auto du = newton_increment(mesh, params, u_dofs, state.u, theta, forcing, zero_lift,
                                       config.linear_solver);
      for (std::size_t i = 0; i < du.size(); ++i) state.u[i] += du[i];
      state.newton_history.push_back(
          assemble_residual_norm(mesh, params, u_dofs, state.u, theta, forcing));
    } catch (const CoercivityError& e) {
      throw NewtonError(it, e.what());
    }
    if (state.newton_history.back() <= config.tol) {
      state.converged = true;
      break;
    }
  }
  return state;
}

SolutionState solve_mechanics(const Mesh& mesh, const MaterialParams& params,
                              std::span<const double> theta, const NewtonConfig& config) {
  const auto bcs = displacement_conditions();
  return solve_mechanics(mesh, params, build_dof_map(mesh, FieldKind::Vector2, bcs), theta, config);
}

}  // namespace limitfem
