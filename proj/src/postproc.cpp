#include "limitfem/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "limitfem/assembly.hpp"
#include "limitfem/fem.hpp"

namespace limitfem {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

double cell_area(const Mesh& mesh, std::size_t cell) {
  static const QuadratureRule rule = gauss_rule(2);
  double area = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    area += rule.weights[q] * map_to_physical(mesh, cell, rule.points[q]).det_j;
  }
  return area;
}

}  // namespace

const std::vector<double>& RecoveredFields::get(const std::string& name) const {
  for (const auto& [n, v] : fields) {
    if (n == name) return v;
  }
  throw std::out_of_range("no recovered field named '" + name + "'");
}

bool RecoveredFields::contains(const std::string& name) const {
  return std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.first == name; });
}

std::vector<std::string> RecoveredFields::names() const {
  std::vector<std::string> out;
  for (const auto& f : fields) out.push_back(f.first);
  return out;
}

RecoveredFields recover_fields(const Mesh& mesh, const MaterialParams& params,
                               std::span<const double> u, std::span<const double> theta,
                               StressVariant variant) {
  const std::size_t nn = mesh.num_nodes();
  if (u.size() != 2 * nn) throw std::invalid_argument("displacement vector has wrong size");
  if (!theta.empty() && theta.size() != nn) throw std::invalid_argument("temperature vector has wrong size");

  std::vector<SymTensor2> eps_sum(nn), stress_sum(nn);
  std::vector<double> weight(nn, 0.0), stress_weight(nn, 0.0);
  RecoveredFields out;
  out.method = "area-weighted corner average";

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double area = cell_area(mesh, c);
    const auto& ids = mesh.cells()[c].nodes;
    for (std::size_t a = 0; a < 4; ++a) {
      const auto mp = map_to_physical(mesh, c, reference_corner(a));
      const SymTensor2 eps = strain_at(mesh, c, mp, u);
      eps_sum[ids[a]] += area * eps;
      weight[ids[a]] += area;
      try {
        SymTensor2 stress = stress_from_strain(eps, params);
        if (variant == StressVariant::Total && !theta.empty()) {
          stress -= (params.alpha() * theta[ids[a]]) * SymTensor2::identity();
        }
        stress_sum[ids[a]] += area * stress;
        stress_weight[ids[a]] += area;
      } catch (const StrainLimitViolation&) {
        ++out.limit_violations;
      }
    }
  }

  std::vector<double> th(nn, 0.0), ux(nn), uy(nn), exx(nn), eyy(nn), exy(nn), txx(nn), tyy(nn), txy(nn);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < nn; ++i) {
    if (!theta.empty()) th[i] = theta[i];
    ux[i] = u[2 * i];
    uy[i] = u[2 * i + 1];
    const double w = weight[i] > 0.0 ? 1.0 / weight[i] : nan;
    exx[i] = eps_sum[i].xx * w;
    eyy[i] = eps_sum[i].yy * w;
    exy[i] = eps_sum[i].xy * w;
    const double ws = stress_weight[i] > 0.0 ? 1.0 / stress_weight[i] : nan;
    txx[i] = stress_sum[i].xx * ws;
    tyy[i] = stress_sum[i].yy * ws;
    txy[i] = stress_sum[i].xy * ws;
  }
  out.fields = {{"theta", std::move(th)}, {"u_x", std::move(ux)},     {"u_y", std::move(uy)},
                {"T_xx", std::move(txx)}, {"T_yy", std::move(tyy)},   {"T_xy", std::move(txy)},
                {"eps_xx", std::move(exx)}, {"eps_yy", std::move(eyy)}, {"eps_xy", std::move(exy)}};
  return out;
}

LineProfile sample_reference_line(const Mesh& mesh, const RecoveredFields& fields,
                                  const std::string& quantity, std::size_t n_samples, Model model) {
  if (!mesh.has_slit()) throw std::invalid_argument("reference line needs the slit domain");
  if (n_samples < 2) throw std::invalid_argument("reference line needs at least two samples");
  const auto& values = fields.get(quantity);

  // Nodes of y = 0.5 left of the tip are never duplicated.
  std::vector<std::pair<double, double>> line;
  for (const auto& node : mesh.nodes()) {
    if (std::abs(node.y - 0.5) <= 1e-12 && node.x <= 0.5 + 1e-12) line.emplace_back(node.x, values[node.id]);
  }
  std::sort(line.begin(), line.end());
  if (line.size() < 2) throw std::invalid_argument("mesh has no grid line at y = 0.5");

  LineProfile profile{quantity, model, {}, {}};
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double x = s + 1 == n_samples ? line.back().first
                                        : 0.5 * static_cast<double>(s) / static_cast<double>(n_samples - 1);
    auto hi = std::lower_bound(line.begin(), line.end(), std::pair<double, double>{x, -std::numeric_limits<double>::infinity()});
    double v;
    if (hi == line.end()) {
      v = line.back().second;
    } else if (hi == line.begin() || std::abs(hi->first - x) <= 1e-14) {
      v = hi->second;
    } else {
      const auto lo = hi - 1;
      const double t = (x - lo->first) / (hi->first - lo->first);
      v = (1.0 - t) * lo->second + t * hi->second;
    }
    profile.x.push_back(x);
    profile.values.push_back(v);
  }
  return profile;
}

void write_vtk(const Mesh& mesh, const RecoveredFields& fields, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "# vtk DataFile Version 3.0\n"
      << "strain-limiting thermoelastic solution\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& node : mesh.nodes()) out << node.x << ' ' << node.y << " 0\n";
  out << "CELLS " << mesh.num_cells() << ' ' << 5 * mesh.num_cells() << '\n';
  for (const auto& cell : mesh.cells()) {
    out << 4;
    for (std::size_t id : cell.nodes) out << ' ' << id;
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) out << "9\n";
  out << "POINT_DATA " << mesh.num_nodes() << '\n';
  for (const auto& [name, values] : fields.fields) {
    if (values.size() != mesh.num_nodes()) {
      throw std::invalid_argument("field '" + name + "' does not cover every node");
    }
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) out << v << '\n';
  }
  finish_output(out, path);
}

void write_profile_csv(const LineProfile& profile, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "x,value,model\n";
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    out << profile.x[i] << ',' << profile.values[i] << ',' << to_string(profile.model) << '\n';
  }
  finish_output(out, path);
}

LineProfile read_profile_csv(const std::filesystem::path& path, const std::string& quantity) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,value,model") {
    throw std::runtime_error(path.string() + ": missing profile header");
  }
  LineProfile profile{quantity, Model::Linear, {}, {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string x, v, m;
    std::getline(row, x, ',');
    std::getline(row, v, ',');
    std::getline(row, m);
    profile.x.push_back(std::stod(x));
    profile.values.push_back(std::stod(v));
    profile.model = m == "nonlinear" ? Model::Nonlinear : Model::Linear;
  }
  return profile;
}

void write_fields_csv(const Mesh& mesh, const RecoveredFields& fields, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "id,x,y";
  for (const auto& [name, values] : fields.fields) out << ',' << name;
  out << '\n';
  for (const auto& node : mesh.nodes()) {
    out << node.id << ',' << node.x << ',' << node.y;
    for (const auto& [name, values] : fields.fields) out << ',' << values[node.id];
    out << '\n';
  }
  finish_output(out, path);
}

std::string profile_filename(const std::string& quantity, Model model) {
  return "profile_" + quantity + "_" + to_string(model) + ".csv";
}

}  // namespace limitfem
