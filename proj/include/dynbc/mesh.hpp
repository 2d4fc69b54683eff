#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dynbc/types.hpp"

namespace dynbc {

struct BoundaryEdge {
  int i = 0;
  int j = 0;
  int marker = 0;

  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

/// Conforming triangulation of the reference domain.
///
/// Triangles are counter-clockwise; boundary edges are oriented with the
/// domain on the left of i -> j. boundary_vertices lists boundary vertices
/// in order of first appearance along boundary_edges, interior_vertices the
/// remaining indices in ascending order. boundary_slot maps a vertex index to
/// its position in boundary_vertices, or -1 for interior vertices.
///
/// Immutable after construction; share freely across threads.
struct TriMesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<int> boundary_vertices;
  std::vector<int> interior_vertices;
  std::vector<int> boundary_slot;
  std::vector<int> interior_slot;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_boundary() const { return static_cast<int>(boundary_vertices.size()); }
  int num_interior() const { return static_cast<int>(interior_vertices.size()); }
};

/// Builds a mesh from raw arrays, derives the vertex partition and checks
/// every invariant (throws ValidationError).
TriMesh make_mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                  std::vector<BoundaryEdge> boundary_edges);

/// Throws ValidationError naming the first violated invariant:
/// "positive-area", "vertex-used", "edge-manifold", "boundary-edges",
/// "euler", "partition".
void validate(const TriMesh& mesh);

/// Disk centred at the origin, structured polar rings. The boundary ring
/// carries 8 * 2^m vertices (the smallest count with spacing <= target_h).
TriMesh generate_disk_mesh(double radius, double target_h);

/// [0, side]^2 split into n x n cells, two triangles per cell.
TriMesh generate_square_mesh(double side, int n);

TriMesh load_mesh(std::string_view text);
TriMesh load_mesh(std::istream& in);
std::string save_mesh(const TriMesh& mesh);

double signed_area(const TriMesh& mesh, int triangle);
double total_area(const TriMesh& mesh);
double boundary_length(const TriMesh& mesh);
double max_edge_length(const TriMesh& mesh);
int count_edges(const TriMesh& mesh);

/// Outward unit normal at each boundary vertex (average of the adjacent edge
/// normals), ordered like boundary_vertices.
std::vector<Vec2> boundary_vertex_normals(const TriMesh& mesh);

}  // namespace dynbc
