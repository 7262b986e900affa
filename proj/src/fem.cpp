#include "limitfem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace limitfem {

namespace {

constexpr std::array<RefPoint, 4> kCorners{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};

struct Rule1d {
  std::vector<double> x;
  std::vector<double> w;
};

Rule1d gauss_1d(int n) {
  switch (n) {
    case 1: return {{0.0}, {2.0}};
    case 2: {
      const double p = 1.0 / std::sqrt(3.0);
      return {{-p, p}, {1.0, 1.0}};
    }
    case 3: {
      const double p = std::sqrt(0.6);
      return {{-p, 0.0, p}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    }
    case 4:
      return {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
              {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538}};
    case 5:
      return {{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
               0.9061798459386640},
              {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
               0.2369268850561891}};
    default:
      throw std::invalid_argument("unsupported Gauss rule with " + std::to_string(n) +
                                  " points per axis (supported: 1..5)");
  }
}

}  // namespace

ShapeValues shape_values(double xi, double eta) {
  ShapeValues v;
  for (std::size_t a = 0; a < 4; ++a) {
    v[a] = 0.25 * (1.0 + kCorners[a].xi * xi) * (1.0 + kCorners[a].eta * eta);
  }
  return v;
}

ShapeGradients shape_gradients(double xi, double eta) {
  ShapeGradients g;
  for (std::size_t a = 0; a < 4; ++a) {
    g[a][0] = 0.25 * kCorners[a].xi * (1.0 + kCorners[a].eta * eta);
    g[a][1] = 0.25 * kCorners[a].eta * (1.0 + kCorners[a].xi * xi);
  }
  return g;
}

RefPoint reference_corner(std::size_t a) { return kCorners.at(a); }

QuadratureRule gauss_rule(int points_per_axis) {
  const Rule1d r = gauss_1d(points_per_axis);
  QuadratureRule rule;
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      rule.points.push_back({r.x[i], r.x[j]});
      rule.weights.push_back(r.w[i] * r.w[j]);
    }
  }
  return rule;
}

MappedPoint map_to_physical(const Mesh& mesh, std::size_t cell, RefPoint ref) {
  const auto pts = mesh.cell_points(cell);
  const auto n = shape_values(ref.xi, ref.eta);
  const auto dn = shape_gradients(ref.xi, ref.eta);

  MappedPoint mp;
  double j00 = 0, j01 = 0, j10 = 0, j11 = 0;  // d(x,y)/d(xi,eta)
  for (std::size_t a = 0; a < 4; ++a) {
    mp.x.x += n[a] * pts[a].x;
    mp.x.y += n[a] * pts[a].y;
    j00 += dn[a][0] * pts[a].x;
    j01 += dn[a][1] * pts[a].x;
    j10 += dn[a][0] * pts[a].y;
    j11 += dn[a][1] * pts[a].y;
  }
  mp.det_j = j00 * j11 - j01 * j10;
  if (!(mp.det_j > 0.0)) {
    throw MeshError("non-positive Jacobian " + std::to_string(mp.det_j) + " in cell " +
                    std::to_string(cell));
  }
  const double inv = 1.0 / mp.det_j;
  for (std::size_t a = 0; a < 4; ++a) {
    // J^{-T} applied to the reference gradient
    mp.grads[a][0] = inv * (j11 * dn[a][0] - j10 * dn[a][1]);
    mp.grads[a][1] = inv * (-j01 * dn[a][0] + j00 * dn[a][1]);
  }
  return mp;
}

DofMap::DofMap(FieldKind kind, std::size_t num_nodes)
    : kind_(kind), num_nodes_(num_nodes), prescribed_(num_dofs()) {}

std::size_t DofMap::num_constrained() const {
  std::size_t count = 0;
  for (const auto& p : prescribed_) count += p.has_value() ? 1 : 0;
  return count;
}

std::vector<std::size_t> DofMap::constrained_dofs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < prescribed_.size(); ++i) {
    if (prescribed_[i]) out.push_back(i);
  }
  return out;
}

void DofMap::constrain(std::size_t dof, double value) { prescribed_.at(dof) = value; }

DofMap build_dof_map(const Mesh& mesh, FieldKind kind,
                     std::span<const DirichletCondition> conditions) {
  DofMap map(kind, mesh.num_nodes());
  std::vector<int> owner_priority(map.num_dofs(), 0);

  for (const auto& bc : conditions) {
    if (!bc.value) throw DofError("Dirichlet condition on " + std::string(to_string(bc.tag)) +
                                  " has no value function");
    for (const auto& face : mesh.boundary_faces()) {
      if (face.tag != bc.tag) continue;
      for (std::size_t node : mesh.face_nodes(face.cell, face.face)) {
        const Point2 p = mesh.nodes()[node].point();
        for (std::size_t c = 0; c < map.components(); ++c) {
          if (!bc.components[c]) continue;
          const std::size_t d = map.dof(node, c);
          const double v = bc.value(p, static_cast<int>(c));
          if (!map.is_constrained(d)) {
            map.constrain(d, v);
            owner_priority[d] = bc.priority;
            continue;
          }
          const double prev = map.prescribed_value(d);
          if (std::abs(prev - v) <= 1e-12 * std::max(1.0, std::abs(v))) {
            owner_priority[d] = std::max(owner_priority[d], bc.priority);
          } else if (bc.priority > owner_priority[d]) {
            map.constrain(d, v);
            owner_priority[d] = bc.priority;
          } else if (bc.priority == owner_priority[d]) {
            throw DofError("conflicting Dirichlet values at dof " + std::to_string(d) + " (node " +
                           std::to_string(node) + ", component " + std::to_string(c) +
                           "): " + std::to_string(prev) + " vs " + std::to_string(v));
          }
        }
      }
    }
  }
  return map;
}

}  // namespace limitfem
