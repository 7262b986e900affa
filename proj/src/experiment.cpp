#include "limitfem/experiment.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "limitfem/assembly.hpp"

namespace limitfem {

Mesh make_domain_mesh(Domain domain, int refinements) {
  return domain == Domain::Example1 ? build_unit_square(refinements) : build_slit_square(refinements);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const MaterialParams params = spec.model == Model::Linear ? spec.params.linearized() : spec.params;
  if (spec.model == Model::Nonlinear && !(params.beta > 0.0)) {
    throw std::invalid_argument("the nonlinear model needs beta > 0");
  }
  params.validate();

  Mesh mesh = make_domain_mesh(spec.domain, spec.refinements);
  HeatSolveInfo heat;
  const auto theta = solve_heat(mesh, params, spec.temperature_case, &heat);
  SolutionState state = solve_mechanics(mesh, params, theta, spec.newton);

  RecoveredFields fields = recover_fields(mesh, params, state.u, state.theta, spec.stress);
  std::vector<LineProfile> profiles;
  if (mesh.has_slit()) {
    const std::size_t samples =
        spec.profile_samples > 0 ? spec.profile_samples
                                 : static_cast<std::size_t>(0.5 / mesh.h() + 0.5) + 1;
    for (const char* q : {"T_yy", "eps_yy"}) {
      profiles.push_back(sample_reference_line(mesh, fields, q, samples, spec.model));
    }
  }
  const double cert = strain_certificate(mesh, params, state.u);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ExperimentResult{std::move(mesh), params,  std::move(state),    heat,
                          std::move(fields), std::move(profiles), cert, secs};
}

std::string run_name(Domain domain, TemperatureCase c, Model model) {
  return std::string(to_string(domain)) + "_" + to_string(c) + "_" + to_string(model);
}

std::string format_summary(const ExperimentSpec& spec, const ExperimentResult& result) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "run = " << run_name(spec.domain, spec.temperature_case, spec.model) << '\n'
      << "refinements = " << spec.refinements << '\n'
      << "nodes = " << result.mesh.num_nodes() << '\n'
      << "cells = " << result.mesh.num_cells() << '\n'
      << "beta = " << result.params.beta << '\n'
      << "a = " << result.params.a << '\n'
      << "converged = " << (result.state.converged ? "true" : "false") << '\n'
      << "iterations = " << result.state.iterations() << '\n'
      << "residual_history = ";
  for (std::size_t i = 0; i < result.state.newton_history.size(); ++i) {
    out << (i ? "," : "") << result.state.newton_history[i];
  }
  out << '\n'
      << "final_residual = " << (result.state.newton_history.empty() ? 0.0 : result.state.newton_history.back())
      << '\n'
      << "certificate = " << result.certificate << '\n'
      << "limit_violations = " << result.fields.limit_violations << '\n'
      << "heat_cg_iterations = " << result.heat.iterations << '\n'
      << "wall_seconds = " << result.wall_seconds << '\n';
  return out.str();
}

std::vector<std::filesystem::path> write_artifacts(const ExperimentSpec& spec, const ExperimentResult& result,
                                                   const std::filesystem::path& dir,
                                                   const ArtifactSelection& what) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  {
    const auto path = dir / "summary.txt";
    std::ofstream out(path);
    out << format_summary(spec, result);
    if (!out.flush()) throw std::runtime_error("write to " + path.string() + " failed");
    written.push_back(path);
  }
  if (what.vtk) {
    written.push_back(dir / "fields.vtk");
    write_vtk(result.mesh, result.fields, written.back());
  }
  if (what.csv) {
    written.push_back(dir / "fields.csv");
    write_fields_csv(result.mesh, result.fields, written.back());
  }
  if (what.profile) {
    for (const auto& p : result.profiles) {
      written.push_back(dir / profile_filename(p.quantity, p.model));
      write_profile_csv(p, written.back());
    }
  }
  return written;
}

}  // namespace limitfem
