#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "limitfem/constitutive.hpp"
#include "limitfem/mesh.hpp"
#include "limitfem/postproc.hpp"
#include "limitfem/solver.hpp"

namespace limitfem {

struct ExperimentSpec {
  Domain domain = Domain::Example1;
  TemperatureCase temperature_case = TemperatureCase::Case1;
  Model model = Model::Nonlinear;
  int refinements = 7;
  MaterialParams params;  // beta is ignored for the linear model
  NewtonConfig newton;
  StressVariant stress = StressVariant::Mechanical;
  /// Reference-line samples; 0 places one sample on every grid node.
  std::size_t profile_samples = 0;
};

struct ExperimentResult {
  Mesh mesh;
  MaterialParams params;  // as used by the solve
  SolutionState state;
  HeatSolveInfo heat;
  RecoveredFields fields;
  std::vector<LineProfile> profiles;  // T_yy and eps_yy, slit domain only
  double certificate = 0.0;           // max beta |E^1/2[eps]| over quadrature points
  double wall_seconds = 0.0;
};

Mesh make_domain_mesh(Domain domain, int refinements);

/// Mesh, heat, mechanics and post-processing for one configuration.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// "<domain>_case<n>_<model>", the per-run output directory name.
std::string run_name(Domain domain, TemperatureCase c, Model model);

struct ArtifactSelection {
  bool vtk = true;
  bool csv = true;      // nodal fields as fields.csv
  bool profile = true;  // reference-line profiles, slit domain only
};

/// Writes summary.txt plus the selected exports into `dir` (created if
/// missing). Returns the paths written.
std::vector<std::filesystem::path> write_artifacts(const ExperimentSpec& spec, const ExperimentResult& result,
                                                   const std::filesystem::path& dir,
                                                   const ArtifactSelection& what = {});

/// key = value lines: run identity, convergence, iteration count, residual
/// history, certificate and timings.
std::string format_summary(const ExperimentSpec& spec, const ExperimentResult& result);

}  // namespace limitfem
