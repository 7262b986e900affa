#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "limitfem/mesh.hpp"

namespace limitfem {

/// Point of the reference cell [-1, 1]^2.
struct RefPoint {
  double xi = 0.0;
  double eta = 0.0;
};

using ShapeValues = std::array<double, 4>;
using ShapeGradients = std::array<std::array<double, 2>, 4>;

/// Bilinear nodal basis, nodes ordered (-1,-1), (1,-1), (1,1), (-1,1).
ShapeValues shape_values(double xi, double eta);
ShapeGradients shape_gradients(double xi, double eta);

/// Reference-cell corner of local node a.
RefPoint reference_corner(std::size_t a);

struct QuadratureRule {
  std::vector<RefPoint> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Tensor-product Gauss-Legendre rule with 1..5 points per axis.
QuadratureRule gauss_rule(int points_per_axis);

struct MappedPoint {
  Point2 x;
  ShapeGradients grads{};  // physical gradients
  double det_j = 0.0;
};

/// Isoparametric map of a reference point into `cell`. Throws MeshError
/// for a non-positive Jacobian.
MappedPoint map_to_physical(const Mesh& mesh, std::size_t cell, RefPoint ref);

enum class FieldKind { Scalar, Vector2 };

/// Prescribed values on the nodes of every face carrying `tag`. For a
/// scalar field only component 0 is read. When two conditions hit the
/// same dof with different values the higher priority wins; equal
/// priorities with different values are an error.
struct DirichletCondition {
  BoundaryTag tag = BoundaryTag::Gamma1;
  std::array<bool, 2> components{true, true};
  std::function<double(Point2, int)> value;
  int priority = 0;
};

class DofError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DofMap {
 public:
  DofMap(FieldKind kind, std::size_t num_nodes);

  FieldKind kind() const { return kind_; }
  std::size_t components() const { return kind_ == FieldKind::Scalar ? 1 : 2; }
  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_dofs() const { return num_nodes_ * components(); }

  /// Vector fields interleave (u_x, u_y) per node.
  std::size_t dof(std::size_t node, std::size_t component = 0) const {
    return node * components() + component;
  }

  bool is_constrained(std::size_t dof) const { return prescribed_[dof].has_value(); }
  double prescribed_value(std::size_t dof) const { return prescribed_[dof].value(); }
  std::size_t num_constrained() const;
  std::vector<std::size_t> constrained_dofs() const;

  void constrain(std::size_t dof, double value);

 private:
  FieldKind kind_;
  std::size_t num_nodes_;
  std::vector<std::optional<double>> prescribed_;
};

DofMap build_dof_map(const Mesh& mesh, FieldKind kind,
                     std::span<const DirichletCondition> conditions);

}  // namespace limitfem
