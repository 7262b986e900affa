#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "limitfem/constitutive.hpp"
#include "limitfem/mesh.hpp"
#include "limitfem/solver.hpp"

namespace limitfem {

enum class StressVariant {
  Mechanical,  // L(eps)
  Total,       // L(eps) - alpha theta I
};

/// Nodal fields named theta, u_x, u_y, T_xx, T_yy, T_xy, eps_xx, eps_yy, eps_xy.
struct RecoveredFields {
  std::vector<std::pair<std::string, std::vector<double>>> fields;
  std::string method;
  /// Cell corners whose strain reached the limit; their stress is left out
  /// of the nodal average (NaN when nothing else contributes).
  std::size_t limit_violations = 0;

  const std::vector<double>& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;
};

/// Corner strains from the displacement gradient, stress through the
/// constitutive law, nodal values by cell-area-weighted averaging.
RecoveredFields recover_fields(const Mesh& mesh, const MaterialParams& params,
                               std::span<const double> u, std::span<const double> theta,
                               StressVariant variant = StressVariant::Mechanical);

struct LineProfile {
  std::string quantity;
  Model model = Model::Linear;
  std::vector<double> x;
  std::vector<double> values;
};

/// Samples `quantity` at `n_samples` evenly spaced points of y = 0.5,
/// 0 <= x <= 0.5, ending at the crack tip. Needs a slit mesh.
LineProfile sample_reference_line(const Mesh& mesh, const RecoveredFields& fields,
                                  const std::string& quantity, std::size_t n_samples, Model model);

/// Legacy ASCII VTK unstructured grid, every field as point-data scalars.
void write_vtk(const Mesh& mesh, const RecoveredFields& fields, const std::filesystem::path& path);

/// CSV with header "x,value,model".
void write_profile_csv(const LineProfile& profile, const std::filesystem::path& path);
LineProfile read_profile_csv(const std::filesystem::path& path, const std::string& quantity = "");

/// Node table "id,x,y,<field>...".
void write_fields_csv(const Mesh& mesh, const RecoveredFields& fields, const std::filesystem::path& path);

/// "profile_<quantity>_<model>.csv"
std::string profile_filename(const std::string& quantity, Model model);

}  // namespace limitfem
