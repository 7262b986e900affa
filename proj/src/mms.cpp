#include "limitfem/mms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "limitfem/fem.hpp"

namespace limitfem {

std::array<double, 2> ManufacturedCase::displacement(Point2 p) {
  return {std::sin(p.x) * std::sin(p.y), std::cos(p.x) * std::cos(p.y)};
}

std::array<std::array<double, 2>, 2> ManufacturedCase::gradient(Point2 p) {
  const double sx = std::sin(p.x), cx = std::cos(p.x), sy = std::sin(p.y), cy = std::cos(p.y);
  return {{{cx * sy, sx * cy}, {-sx * cy, -cx * sy}}};
}

std::array<std::array<std::array<double, 2>, 2>, 2> ManufacturedCase::hessian(Point2 p) {
  const double sx = std::sin(p.x), cx = std::cos(p.x), sy = std::sin(p.y), cy = std::cos(p.y);
  return {{{{{-sx * sy, cx * cy}, {cx * cy, -sx * sy}}},
           {{{-cx * cy, sx * sy}, {sx * sy, -cx * cy}}}}};
}

SymTensor2 ManufacturedCase::strain(Point2 p) const {
  const auto g = gradient(p);
  return symmetric_gradient(g[0][0], g[0][1], g[1][0], g[1][1]);
}

SymTensor2 ManufacturedCase::stress(Point2 p) const { return stress_from_strain(strain(p), params); }

double ManufacturedCase::max_limit_ratio(int n) const {
  double worst = 0.0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const Point2 p{static_cast<double>(i) / n, static_cast<double>(j) / n};
      worst = std::max(worst, params.beta * energy_norm(strain(p), params));
    }
  }
  return worst;
}

std::array<double, 2> manufactured_forcing(const ManufacturedCase& mc, Point2 p) {
  const SymTensor2 eps = mc.strain(p);
  const auto h = ManufacturedCase::hessian(p);
  std::array<SymTensor2, 2> dstress;
  for (std::size_t j = 0; j < 2; ++j) {
    // d/dx_j of grad u: entry (i, k) is h[i][k][j]
    const SymTensor2 deps = symmetric_gradient(h[0][0][j], h[0][1][j], h[1][0][j], h[1][1][j]);
    dstress[j] = tangent_apply(eps, deps, mc.params);
  }
  return {-(dstress[0].xx + dstress[1].xy), -(dstress[0].xy + dstress[1].yy)};
}

double l2_error(const Mesh& mesh, std::span<const double> u_h, const VectorField& exact) {
  if (u_h.size() != 2 * mesh.num_nodes()) throw std::invalid_argument("displacement vector has wrong size");
  static const QuadratureRule rule = gauss_rule(3);
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ids = mesh.cells()[c].nodes;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto mp = map_to_physical(mesh, c, rule.points[q]);
      const auto n = shape_values(rule.points[q].xi, rule.points[q].eta);
      double ux = 0.0, uy = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        ux += n[a] * u_h[2 * ids[a]];
        uy += n[a] * u_h[2 * ids[a] + 1];
      }
      const auto ue = exact(mp.x);
      sum += ((ux - ue[0]) * (ux - ue[0]) + (uy - ue[1]) * (uy - ue[1])) * rule.weights[q] * mp.det_j;
    }
  }
  return std::sqrt(sum);
}

std::vector<ConvergenceRow> convergence_study(int cycles, const ManufacturedCase& mc,
                                              const NewtonConfig& newton) {
  if (cycles < 2) throw std::invalid_argument("convergence study needs at least two cycles");
  if (!(mc.max_limit_ratio() < 1.0)) {
    throw std::invalid_argument("manufactured solution violates the strain limit");
  }
  auto trace = [](Point2 p, int comp) { return ManufacturedCase::displacement(p)[static_cast<std::size_t>(comp)]; };
  std::vector<DirichletCondition> bcs;
  for (auto tag : {BoundaryTag::Gamma1, BoundaryTag::Gamma2, BoundaryTag::Gamma3, BoundaryTag::Gamma4}) {
    bcs.push_back({tag, {true, true}, trace, 0});
  }
  const BodyForce forcing = [&mc](Point2 p) { return manufactured_forcing(mc, p); };
  // The linear initializer gets the beta = 0 manufactured load, so it
  // starts Newton near u* instead of far outside the strain limit.
  ManufacturedCase linear_case = mc;
  linear_case.params = mc.params.linearized();
  const BodyForce initial_forcing = [&linear_case](Point2 p) { return manufactured_forcing(linear_case, p); };

  std::vector<ConvergenceRow> rows;
  for (int cycle = 1; cycle <= cycles; ++cycle) {
    const Mesh mesh = build_unit_square(cycle);
    const DofMap dofs = build_dof_map(mesh, FieldKind::Vector2, bcs);
    const auto state = solve_mechanics(mesh, mc.params, dofs, {}, newton, forcing, initial_forcing);
    ConvergenceRow row;
    row.cycle = cycle;
    row.h = mesh.h();
    row.l2_error = l2_error(mesh, state.u, &ManufacturedCase::displacement);
    row.newton_iterations = state.iterations();
    row.converged = state.converged;
    if (!rows.empty()) row.rate = std::log2(rows.back().l2_error / row.l2_error);
    rows.push_back(row);
  }
  return rows;
}

void print_convergence_table(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  out << std::setw(6) << "cycle" << std::setw(12) << "h" << std::setw(22) << "L2 error" << std::setw(10)
      << "rate" << std::setw(8) << "newton" << '\n';
  for (const auto& r : rows) {
    out << std::setw(6) << r.cycle << std::setw(12) << r.h << std::setw(22) << std::setprecision(12)
        << r.l2_error << std::setw(10) << std::setprecision(5);
    if (r.rate) {
      out << std::fixed << *r.rate << std::defaultfloat;
    } else {
      out << "-";
    }
    out << std::setw(8) << r.newton_iterations << (r.converged ? "" : "  (not converged)") << '\n';
  }
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << std::setprecision(17) << "cycle,h,l2_error,rate\n";
  for (const auto& r : rows) {
    out << r.cycle << ',' << r.h << ',' << r.l2_error << ',';
    if (r.rate) out << *r.rate;
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace limitfem
