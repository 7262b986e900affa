#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace limitfem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Node {
  std::size_t id = 0;
  double x = 0.0;
  double y = 0.0;

  Point2 point() const { return {x, y}; }
};

/// Four node indices in counterclockwise order. Local face f joins
/// nodes f and (f + 1) % 4, so faces are bottom, right, top, left on
/// an axis-aligned cell.
struct QuadCell {
  std::array<std::size_t, 4> nodes{};
};

enum class BoundaryTag { Gamma1, Gamma2, Gamma3, Gamma4, CrackUpper, CrackLower };

const char* to_string(BoundaryTag tag);

struct BoundaryFace {
  std::size_t cell = 0;
  int face = 0;
  BoundaryTag tag = BoundaryTag::Gamma1;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Mesh {
 public:
  Mesh(std::vector<Node> nodes, std::vector<QuadCell> cells, double h,
       std::optional<std::size_t> tip_node = std::nullopt,
       std::vector<std::pair<std::size_t, std::size_t>> crack_pairs = {});

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<QuadCell>& cells() const { return cells_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_cells() const { return cells_.size(); }

  /// Axis-aligned cell edge length.
  double h() const { return h_; }

  bool has_slit() const { return tip_node_.has_value(); }
  std::optional<std::size_t> tip_node() const { return tip_node_; }

  /// (upper copy, lower copy) for every duplicated crack-face grid point.
  const std::vector<std::pair<std::size_t, std::size_t>>& crack_pairs() const {
    return crack_pairs_;
  }

  std::array<Point2, 4> cell_points(std::size_t cell) const;
  std::array<std::size_t, 2> face_nodes(std::size_t cell, int face) const;

 private:
  std::vector<Node> nodes_;
  std::vector<QuadCell> cells_;
  std::vector<BoundaryFace> faces_;
  double h_;
  std::optional<std::size_t> tip_node_;
  std::vector<std::pair<std::size_t, std::size_t>> crack_pairs_;
};

/// Uniform (2^r)^2 grid of the unit square.
Mesh build_unit_square(int refinements);

/// Unit square with an edge slit from the tip (0.5, 0.5) to (1, 0.5).
/// Grid points with x > 0.5 on y = 0.5 are duplicated; cells above the
/// slit keep the original node, cells below get the appended copy.
Mesh build_slit_square(int refinements);

/// Tags every exterior face of the mesh. Throws MeshError when an
/// exterior face lies on no known boundary part.
std::vector<BoundaryFace> classify_boundary(const Mesh& mesh);

/// Debug listing: "id x y" per node followed by "id n0 n1 n2 n3" per cell.
void write_mesh_dump(const Mesh& mesh, std::ostream& out);

}  // namespace limitfem
