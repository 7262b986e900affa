#include "limitfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace limitfem {

namespace {

constexpr double kGeomTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kGeomTol; }

std::size_t grid_id(std::size_t i, std::size_t j, std::size_t n) { return j * (n + 1) + i; }

std::vector<Node> grid_nodes(std::size_t n) {
  std::vector<Node> nodes;
  nodes.reserve((n + 1) * (n + 1));
  const double step = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      // i * step rather than accumulation keeps grid lines exact
      nodes.push_back({grid_id(i, j, n), static_cast<double>(i) * step,
                       static_cast<double>(j) * step});
    }
  }
  return nodes;
}

std::size_t cells_per_axis(int refinements) {
  if (refinements < 0) {
    throw MeshError("refinement count must be non-negative, got " + std::to_string(refinements));
  }
  if (refinements > 14) {
    throw MeshError("refinement count " + std::to_string(refinements) + " is too large");
  }
  return std::size_t{1} << refinements;
}

}  // namespace

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Gamma1: return "Gamma1";
    case BoundaryTag::Gamma2: return "Gamma2";
    case BoundaryTag::Gamma3: return "Gamma3";
    case BoundaryTag::Gamma4: return "Gamma4";
    case BoundaryTag::CrackUpper: return "CrackUpper";
    case BoundaryTag::CrackLower: return "CrackLower";
  }
  return "unknown";
}

Mesh::Mesh(std::vector<Node> nodes, std::vector<QuadCell> cells, double h,
           std::optional<std::size_t> tip_node,
           std::vector<std::pair<std::size_t, std::size_t>> crack_pairs)
    : nodes_(std::move(nodes)),
      cells_(std::move(cells)),
      h_(h),
      tip_node_(tip_node),
      crack_pairs_(std::move(crack_pairs)) {
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto& ids = cells_[c].nodes;
    for (std::size_t a = 0; a < 4; ++a) {
      if (ids[a] >= nodes_.size()) {
        throw MeshError("cell " + std::to_string(c) + " references missing node " +
                        std::to_string(ids[a]));
      }
      for (std::size_t b = a + 1; b < 4; ++b) {
        if (ids[a] == ids[b]) {
          throw MeshError("cell " + std::to_string(c) + " repeats node " + std::to_string(ids[a]));
        }
      }
    }
  }
  faces_ = classify_boundary(*this);
}

std::array<Point2, 4> Mesh::cell_points(std::size_t cell) const {
  std::array<Point2, 4> pts;
  for (std::size_t a = 0; a < 4; ++a) pts[a] = nodes_[cells_[cell].nodes[a]].point();
  return pts;
}

std::array<std::size_t, 2> Mesh::face_nodes(std::size_t cell, int face) const {
  const auto& ids = cells_[cell].nodes;
  return {ids[static_cast<std::size_t>(face)], ids[static_cast<std::size_t>((face + 1) % 4)]};
}

Mesh build_unit_square(int refinements) {
  const std::size_t n = cells_per_axis(refinements);
  std::vector<QuadCell> cells;
  cells.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      cells.push_back({{grid_id(i, j, n), grid_id(i + 1, j, n), grid_id(i + 1, j + 1, n),
                        grid_id(i, j + 1, n)}});
    }
  }
  return Mesh(grid_nodes(n), std::move(cells), 1.0 / static_cast<double>(n));
}

Mesh build_slit_square(int refinements) {
  if (refinements < 1) {
    throw MeshError("slit mesh needs at least one refinement so that y = 0.5 is a grid line");
  }
  const std::size_t n = cells_per_axis(refinements);
  const std::size_t mid = n / 2;
  auto nodes = grid_nodes(n);

  // Lower copies of the grid points strictly right of the tip.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::size_t, std::size_t> lower_copy;
  for (std::size_t i = mid + 1; i <= n; ++i) {
    const std::size_t upper = grid_id(i, mid, n);
    const std::size_t lower = nodes.size();
    nodes.push_back({lower, nodes[upper].x, nodes[upper].y});
    lower_copy.emplace(upper, lower);
    pairs.emplace_back(upper, lower);
  }

  std::vector<QuadCell> cells;
  cells.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      QuadCell cell{{grid_id(i, j, n), grid_id(i + 1, j, n), grid_id(i + 1, j + 1, n),
                     grid_id(i, j + 1, n)}};
      if (j + 1 == mid) {
        // top face of this row lies on y = 0.5
        for (std::size_t a : {std::size_t{2}, std::size_t{3}}) {
          if (auto it = lower_copy.find(cell.nodes[a]); it != lower_copy.end()) {
            cell.nodes[a] = it->second;
          }
        }
      }
      cells.push_back(cell);
    }
  }
  return Mesh(std::move(nodes), std::move(cells), 1.0 / static_cast<double>(n), grid_id(mid, mid, n),
              std::move(pairs));
}

std::vector<BoundaryFace> classify_boundary(const Mesh& mesh) {
  std::map<std::pair<std::size_t, std::size_t>, int> face_count;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    for (int f = 0; f < 4; ++f) {
      auto [a, b] = mesh.face_nodes(c, f);
      ++face_count[{std::min(a, b), std::max(a, b)}];
    }
  }

  std::vector<BoundaryFace> faces;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto pts = mesh.cell_points(c);
    const double cy = 0.25 * (pts[0].y + pts[1].y + pts[2].y + pts[3].y);
    for (int f = 0; f < 4; ++f) {
      auto [a, b] = mesh.face_nodes(c, f);
      if (face_count[{std::min(a, b), std::max(a, b)}] != 1) continue;
      const Point2 p = mesh.nodes()[a].point();
      const Point2 q = mesh.nodes()[b].point();
      BoundaryTag tag;
      if (near(p.y, 0.0) && near(q.y, 0.0)) {
        tag = BoundaryTag::Gamma1;
      } else if (near(p.x, 1.0) && near(q.x, 1.0)) {
        tag = BoundaryTag::Gamma2;
      } else if (near(p.y, 1.0) && near(q.y, 1.0)) {
        tag = BoundaryTag::Gamma3;
      } else if (near(p.x, 0.0) && near(q.x, 0.0)) {
        tag = BoundaryTag::Gamma4;
      } else if (mesh.has_slit() && near(p.y, 0.5) && near(q.y, 0.5) && p.x >= 0.5 - kGeomTol &&
                 q.x >= 0.5 - kGeomTol) {
        tag = cy > 0.5 ? BoundaryTag::CrackUpper : BoundaryTag::CrackLower;
      } else {
        throw MeshError("exterior face " + std::to_string(f) + " of cell " + std::to_string(c) +
                        " lies on no boundary part");
      }
      faces.push_back({c, f, tag});
    }
  }
  return faces;
}

void write_mesh_dump(const Mesh& mesh, std::ostream& out) {
  out.precision(17);
  for (const auto& node : mesh.nodes()) out << node.id << ' ' << node.x << ' ' << node.y << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ids = mesh.cells()[c].nodes;
    out << c << ' ' << ids[0] << ' ' << ids[1] << ' ' << ids[2] << ' ' << ids[3] << '\n';
  }
}

}  // namespace limitfem
