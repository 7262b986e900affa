#include "limitfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limitfem {

namespace {

std::string coercivity_message(std::size_t cell, double energy_norm, double beta) {
  std::ostringstream os;
  os.precision(10);
  os << "coercivity lost in cell " << cell << ": beta * energy norm = " << beta * energy_norm
     << " (energy norm " << energy_norm << ")";
  return os.str();
}

/// Strain of the vector basis function (node a, component c).
SymTensor2 basis_strain(const ShapeGradients& g, std::size_t a, std::size_t c) {
  return c == 0 ? SymTensor2{g[a][0], 0.0, 0.5 * g[a][1]} : SymTensor2{0.0, g[a][1], 0.5 * g[a][0]};
}

std::array<double, 2> scalar_gradient(const Mesh& mesh, std::size_t cell, const MappedPoint& mp,
                                      std::span<const double> field) {
  std::array<double, 2> grad{0.0, 0.0};
  if (field.empty()) return grad;
  const auto& ids = mesh.cells()[cell].nodes;
  for (std::size_t a = 0; a < 4; ++a) {
    grad[0] += field[ids[a]] * mp.grads[a][0];
    grad[1] += field[ids[a]] * mp.grads[a][1];
  }
  return grad;
}

SymTensor2 checked_stress(const SymTensor2& eps, const MaterialParams& params, std::size_t cell) {
  try {
    return stress_from_strain(eps, params);
  } catch (const StrainLimitViolation& e) {
    throw CoercivityError(cell, e.energy_norm(), params.beta);
  }
}

void check_sizes(const Mesh& mesh, const DofMap& dofs, std::span<const double> u,
                 std::span<const double> theta) {
  if (dofs.kind() != FieldKind::Vector2 || dofs.num_nodes() != mesh.num_nodes()) {
    throw std::invalid_argument("displacement dof map does not match the mesh");
  }
  if (u.size() != dofs.num_dofs()) throw std::invalid_argument("displacement vector has wrong size");
  if (!theta.empty() && theta.size() != mesh.num_nodes()) {
    throw std::invalid_argument("temperature vector has wrong size");
  }
}

const QuadratureRule& assembly_rule() {
  static const QuadratureRule rule = gauss_rule(2);
  return rule;
}

}  // namespace

CoercivityError::CoercivityError(std::size_t cell, double energy_norm, double beta)
    : std::runtime_error(coercivity_message(cell, energy_norm, beta)),
      cell_(cell),
      energy_norm_(energy_norm) {}

CompressedMatrix make_pattern(const Mesh& mesh, FieldKind kind) {
  const std::size_t nc = kind == FieldKind::Scalar ? 1 : 2;
  std::vector<std::vector<std::size_t>> pattern(mesh.num_nodes() * nc);
  for (const auto& cell : mesh.cells()) {
    for (std::size_t a : cell.nodes) {
      for (std::size_t b : cell.nodes) {
        for (std::size_t ca = 0; ca < nc; ++ca) {
          for (std::size_t cb = 0; cb < nc; ++cb) pattern[a * nc + ca].push_back(b * nc + cb);
        }
      }
    }
  }
  // isolated nodes still need a diagonal
  for (std::size_t i = 0; i < pattern.size(); ++i) pattern[i].push_back(i);
  const std::size_t n = pattern.size();
  return CompressedMatrix(n, std::move(pattern));
}

SymTensor2 strain_at(const Mesh& mesh, std::size_t cell, const MappedPoint& mp,
                     std::span<const double> u) {
  double dux_dx = 0, dux_dy = 0, duy_dx = 0, duy_dy = 0;
  const auto& ids = mesh.cells()[cell].nodes;
  for (std::size_t a = 0; a < 4; ++a) {
    const double ux = u[2 * ids[a]];
    const double uy = u[2 * ids[a] + 1];
    dux_dx += ux * mp.grads[a][0];
    dux_dy += ux * mp.grads[a][1];
    duy_dx += uy * mp.grads[a][0];
    duy_dy += uy * mp.grads[a][1];
  }
  return symmetric_gradient(dux_dx, dux_dy, duy_dx, duy_dy);
}

SparseSystem assemble_heat(const Mesh& mesh, const MaterialParams& params, const DofMap& theta_dofs) {
  if (theta_dofs.kind() != FieldKind::Scalar || theta_dofs.num_nodes() != mesh.num_nodes()) {
    throw std::invalid_argument("temperature dof map does not match the mesh");
  }
  if (theta_dofs.num_constrained() == 0) {
    throw std::invalid_argument("heat system is singular: no Dirichlet temperature dof");
  }
  SparseSystem sys{make_pattern(mesh, FieldKind::Scalar), std::vector<double>(mesh.num_nodes(), 0.0)};
  const auto& rule = assembly_rule();
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ids = mesh.cells()[c].nodes;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto mp = map_to_physical(mesh, c, rule.points[q]);
      const auto n = shape_values(rule.points[q].xi, rule.points[q].eta);
      const double jw = rule.weights[q] * mp.det_j;
      for (std::size_t i = 0; i < 4; ++i) {
        sys.rhs[ids[i]] += params.g * n[i] * jw;
        for (std::size_t j = 0; j < 4; ++j) {
          const double gg = mp.grads[i][0] * mp.grads[j][0] + mp.grads[i][1] * mp.grads[j][1];
          sys.matrix.add(ids[i], ids[j], params.k * gg * jw);
        }
      }
    }
  }
  return sys;
}

SparseSystem assemble_newton_system(const Mesh& mesh, const MaterialParams& params,
                                    const DofMap& u_dofs, std::span<const double> u_n,
                                    std::span<const double> theta, const BodyForce& forcing) {
  check_sizes(mesh, u_dofs, u_n, theta);
  SparseSystem sys{make_pattern(mesh, FieldKind::Vector2), std::vector<double>(u_dofs.num_dofs(), 0.0)};
  const auto& rule = assembly_rule();
  const double alpha = params.alpha();

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ids = mesh.cells()[c].nodes;
    double ke[8][8] = {};
    double fe[8] = {};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto mp = map_to_physical(mesh, c, rule.points[q]);
      const auto n = shape_values(rule.points[q].xi, rule.points[q].eta);
      const double jw = rule.weights[q] * mp.det_j;
      const SymTensor2 eps_n = strain_at(mesh, c, mp, u_n);
      const SymTensor2 stress = checked_stress(eps_n, params, c);
      const auto grad_theta = scalar_gradient(mesh, c, mp, theta);
      std::array<double, 2> f{0.0, 0.0};
      if (forcing) f = forcing(mp.x);

      std::array<SymTensor2, 8> eps_basis;
      std::array<SymTensor2, 8> tangent;
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t comp = 0; comp < 2; ++comp) {
          const std::size_t i = 2 * a + comp;
          eps_basis[i] = basis_strain(mp.grads, a, comp);
          try {
            tangent[i] = tangent_apply(eps_n, eps_basis[i], params);
          } catch (const StrainLimitViolation& e) {
            throw CoercivityError(c, e.energy_norm(), params.beta);
          }
        }
      }
      for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t a = i / 2;
        const std::size_t comp = i % 2;
        fe[i] += (-alpha * grad_theta[comp] * n[a] - contract(stress, eps_basis[i]) + f[comp] * n[a]) * jw;
        for (std::size_t j = 0; j < 8; ++j) ke[i][j] += contract(tangent[j], eps_basis[i]) * jw;
      }
    }
    for (std::size_t i = 0; i < 8; ++i) {
      const std::size_t gi = 2 * ids[i / 2] + i % 2;
      sys.rhs[gi] += fe[i];
      for (std::size_t j = 0; j < 8; ++j) sys.matrix.add(gi, 2 * ids[j / 2] + j % 2, ke[i][j]);
    }
  }
  return sys;
}

std::vector<double> assemble_residual(const Mesh& mesh, const MaterialParams& params,
                                      const DofMap& u_dofs, std::span<const double> u,
                                      std::span<const double> theta, const BodyForce& forcing) {
  check_sizes(mesh, u_dofs, u, theta);
  std::vector<double> res(u_dofs.num_dofs(), 0.0);
  const auto& rule = assembly_rule();
  const double alpha = params.alpha();
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ids = mesh.cells()[c].nodes;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto mp = map_to_physical(mesh, c, rule.points[q]);
      const auto n = shape_values(rule.points[q].xi, rule.points[q].eta);
      const double jw = rule.weights[q] * mp.det_j;
      const SymTensor2 stress = checked_stress(strain_at(mesh, c, mp, u), params, c);
      const auto grad_theta = scalar_gradient(mesh, c, mp, theta);
      std::array<double, 2> f{0.0, 0.0};
      if (forcing) f = forcing(mp.x);
      for (std::size_t a = 0; a < 4; ++a) {
        const auto& g = mp.grads[a];
        // L : eps(phi e_x) = T_xx dphi/dx + T_xy dphi/dy, likewise for e_y
        res[2 * ids[a]] +=
            (stress.xx * g[0] + stress.xy * g[1] + (alpha * grad_theta[0] - f[0]) * n[a]) * jw;
        res[2 * ids[a] + 1] +=
            (stress.xy * g[0] + stress.yy * g[1] + (alpha * grad_theta[1] - f[1]) * n[a]) * jw;
      }
    }
  }
  return res;
}

double assemble_residual_norm(const Mesh& mesh, const MaterialParams& params, const DofMap& u_dofs,
                              std::span<const double> u, std::span<const double> theta,
                              const BodyForce& forcing) {
  const auto res = assemble_residual(mesh, params, u_dofs, u, theta, forcing);
  double s = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (!u_dofs.is_constrained(i)) s += res[i] * res[i];
  }
  return std::sqrt(s);
}

void apply_dirichlet(SparseSystem& system, const DofMap& dofs, std::span<const double> values) {
  auto& m = system.matrix;
  const std::size_t n = m.size();
  if (dofs.num_dofs() != n || system.rhs.size() != n || values.size() != n) {
    throw std::invalid_argument("Dirichlet data size does not match the system");
  }
  const auto offs = m.row_offsets();
  const auto cols = m.column_indices();
  auto vals = m.values();
  for (std::size_t i = 0; i < n; ++i) {
    const bool row_fixed = dofs.is_constrained(i);
    for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
      const std::size_t j = cols[k];
      if (row_fixed) {
        vals[k] = (j == i) ? 1.0 : 0.0;
      } else if (dofs.is_constrained(j)) {
        system.rhs[i] -= vals[k] * values[j];
        vals[k] = 0.0;
      }
    }
    if (row_fixed) system.rhs[i] = values[i];
  }
}

void apply_dirichlet(SparseSystem& system, const DofMap& dofs) {
  std::vector<double> values(dofs.num_dofs(), 0.0);
  for (std::size_t d : dofs.constrained_dofs()) values[d] = dofs.prescribed_value(d);
  apply_dirichlet(system, dofs, values);
}

double strain_certificate(const Mesh& mesh, const MaterialParams& params, std::span<const double> u) {
  if (u.size() != 2 * mesh.num_nodes()) throw std::invalid_argument("displacement vector has wrong size");
  const auto& rule = assembly_rule();
  double worst = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    for (const auto& pt : rule.points) {
      const auto mp = map_to_physical(mesh, c, pt);
      worst = std::max(worst, params.beta * energy_norm(strain_at(mesh, c, mp, u), params));
    }
  }
  return worst;
}

}  // namespace limitfem
