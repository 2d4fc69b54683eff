#include "dynbc/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>

#include "dynbc/errors.hpp"

namespace dynbc {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey undirected(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

void derive_partition(TriMesh& mesh) {
  const int nv = mesh.num_vertices();
  mesh.boundary_vertices.clear();
  mesh.interior_vertices.clear();
  mesh.boundary_slot.assign(nv, -1);
  mesh.interior_slot.assign(nv, -1);
  for (const auto& e : mesh.boundary_edges) {
    for (int v : {e.i, e.j}) {
      if (mesh.boundary_slot[v] < 0) {
        mesh.boundary_slot[v] = mesh.num_boundary();
        mesh.boundary_vertices.push_back(v);
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (mesh.boundary_slot[v] < 0) {
      mesh.interior_slot[v] = mesh.num_interior();
      mesh.interior_vertices.push_back(v);
    }
  }
}

void check_indices(const TriMesh& mesh) {
  const int nv = mesh.num_vertices();
  auto in_range = [nv](int v) { return v >= 0 && v < nv; };
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    for (int v : mesh.triangles[t])
      if (!in_range(v))
        throw ValidationError("index-range", "triangle " + std::to_string(t) + " references vertex " +
                                                 std::to_string(v));
  for (std::size_t b = 0; b < mesh.boundary_edges.size(); ++b)
    for (int v : {mesh.boundary_edges[b].i, mesh.boundary_edges[b].j})
      if (!in_range(v))
        throw ValidationError("index-range", "boundary edge " + std::to_string(b) +
                                                 " references vertex " + std::to_string(v));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

double signed_area(const TriMesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const Point& a = mesh.vertices[tri[0]];
  const Point& b = mesh.vertices[tri[1]];
  const Point& c = mesh.vertices[tri[2]];
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double total_area(const TriMesh& mesh) {
  double s = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) s += signed_area(mesh, t);
  return s;
}

double boundary_length(const TriMesh& mesh) {
  double s = 0.0;
  for (const auto& e : mesh.boundary_edges) s += (mesh.vertices[e.j] - mesh.vertices[e.i]).norm();
  return s;
}

double max_edge_length(const TriMesh& mesh) {
  double m = 0.0;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k)
      m = std::max(m, (mesh.vertices[tri[k]] - mesh.vertices[tri[(k + 1) % 3]]).norm());
  return m;
}

int count_edges(const TriMesh& mesh) {
  std::map<EdgeKey, int> edges;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) ++edges[undirected(tri[k], tri[(k + 1) % 3])];
  return static_cast<int>(edges.size());
}

void validate(const TriMesh& mesh) {
  check_indices(mesh);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (!(signed_area(mesh, t) > 0.0))
      throw ValidationError("positive-area", "triangle " + std::to_string(t) +
                                                 " has non-positive signed area");
  }

  std::vector<char> used(mesh.vertices.size(), 0);
  for (const auto& tri : mesh.triangles)
    for (int v : tri) used[v] = 1;
  for (std::size_t v = 0; v < used.size(); ++v)
    if (!used[v]) throw ValidationError("vertex-used", "vertex " + std::to_string(v) + " is in no triangle");

  // Directed half-edges; an undirected edge seen once lies on the boundary.
  std::map<EdgeKey, int> count;
  std::map<EdgeKey, int> directed;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      ++count[undirected(a, b)];
      if (++directed[{a, b}] > 1)
        throw ValidationError("edge-manifold", "half-edge " + std::to_string(a) + "->" +
                                                   std::to_string(b) + " used twice (orientation)");
    }
  }
  std::size_t n_boundary = 0;
  for (const auto& [edge, n] : count) {
    if (n > 2)
      throw ValidationError("edge-manifold", "edge " + std::to_string(edge.first) + "-" +
                                                 std::to_string(edge.second) + " shared by " +
                                                 std::to_string(n) + " triangles");
    if (n == 1) ++n_boundary;
  }
  if (n_boundary != mesh.boundary_edges.size())
    throw ValidationError("boundary-edges", "mesh has " + std::to_string(n_boundary) +
                                                " boundary edges but " +
                                                std::to_string(mesh.boundary_edges.size()) +
                                                " were declared");
  std::map<EdgeKey, int> declared;
  for (const auto& e : mesh.boundary_edges) {
    const auto key = undirected(e.i, e.j);
    if (++declared[key] > 1)
      throw ValidationError("boundary-edges", "boundary edge " + std::to_string(e.i) + "-" +
                                                  std::to_string(e.j) + " declared twice");
    auto it = count.find(key);
    if (it == count.end() || it->second != 1)
      throw ValidationError("boundary-edges", "declared edge " + std::to_string(e.i) + "-" +
                                                  std::to_string(e.j) +
                                                  " is not a boundary edge of exactly one triangle");
    if (!directed.count({e.i, e.j}))
      throw ValidationError("boundary-edges", "edge " + std::to_string(e.i) + "->" +
                                                  std::to_string(e.j) +
                                                  " does not have the domain on its left");
  }

  const long euler = static_cast<long>(mesh.vertices.size()) - static_cast<long>(count.size()) +
                     static_cast<long>(mesh.triangles.size());
  if (euler != 1)
    throw ValidationError("euler", "V - E + T = " + std::to_string(euler) + ", expected 1");

  if (mesh.boundary_vertices.size() + mesh.interior_vertices.size() != mesh.vertices.size() ||
      mesh.boundary_slot.size() != mesh.vertices.size())
    throw ValidationError("partition", "boundary and interior lists do not partition the vertices");
  std::vector<int> seen(mesh.vertices.size(), 0);
  for (int v : mesh.boundary_vertices) ++seen[v];
  for (int v : mesh.interior_vertices) ++seen[v];
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (seen[v] != 1)
      throw ValidationError("partition", "vertex " + std::to_string(v) + " listed " +
                                             std::to_string(seen[v]) + " times");
}

TriMesh make_mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                  std::vector<BoundaryEdge> boundary_edges) {
  TriMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  mesh.boundary_edges = std::move(boundary_edges);
  check_indices(mesh);
  derive_partition(mesh);
  validate(mesh);
  return mesh;
}

TriMesh generate_disk_mesh(double radius, double target_h) {
  if (!(radius > 0.0) || !(target_h > 0.0) || !(target_h < radius))
    throw InvalidParameter("generate_disk_mesh: need radius > 0 and 0 < target_h < radius");

  const double two_pi = 2.0 * std::numbers::pi;
  const int rings = static_cast<int>(std::ceil(radius / target_h - 1e-12));
  int n_boundary = 8;
  while (two_pi * radius / n_boundary > target_h) n_boundary *= 2;

  std::vector<Point> vertices{Point(0.0, 0.0)};
  std::vector<std::vector<int>> ring_ids(rings + 1);
  ring_ids[0] = {0};
  for (int k = 1; k <= rings; ++k) {
    const double r = radius * k / rings;
    const int n = k == rings ? n_boundary
                             : std::max(6, static_cast<int>(std::ceil(two_pi * r / target_h)));
    for (int i = 0; i < n; ++i) {
      const double theta = two_pi * i / n;
      ring_ids[k].push_back(static_cast<int>(vertices.size()));
      vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }

  std::vector<std::array<int, 3>> triangles;
  {
    const auto& first = ring_ids[1];
    const int n = static_cast<int>(first.size());
    for (int i = 0; i < n; ++i) triangles.push_back({0, first[i], first[(i + 1) % n]});
  }
  // Strip between consecutive rings: advance whichever side yields the
  // shorter new diagonal.
  for (int k = 2; k <= rings; ++k) {
    const auto& inner = ring_ids[k - 1];
    const auto& outer = ring_ids[k];
    const int ni = static_cast<int>(inner.size());
    const int no = static_cast<int>(outer.size());
    int i = 0, j = 0;
    while (i < ni || j < no) {
      const int a = inner[i % ni], a_next = inner[(i + 1) % ni];
      const int b = outer[j % no], b_next = outer[(j + 1) % no];
      bool advance_inner;
      if (i == ni) {
        advance_inner = false;
      } else if (j == no) {
        advance_inner = true;
      } else {
        const double d_inner = (vertices[a_next] - vertices[b]).squaredNorm();
        const double d_outer = (vertices[b_next] - vertices[a]).squaredNorm();
        advance_inner = d_inner <= d_outer;
      }
      if (advance_inner) {
        triangles.push_back({a, b, a_next});
        ++i;
      } else {
        triangles.push_back({a, b, b_next});
        ++j;
      }
    }
  }

  std::vector<BoundaryEdge> edges;
  const auto& outer = ring_ids[rings];
  for (int i = 0; i < n_boundary; ++i)
    edges.push_back({outer[i], outer[(i + 1) % n_boundary], 1});

  return make_mesh(std::move(vertices), std::move(triangles), std::move(edges));
}

TriMesh generate_square_mesh(double side, int n) {
  if (!(side > 0.0) || n < 1) throw InvalidParameter("generate_square_mesh: need side > 0 and n >= 1");
  const double h = side / n;
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<Point> vertices;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) vertices.emplace_back(i * h, j * h);
  std::vector<std::array<int, 3>> triangles;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  std::vector<BoundaryEdge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({id(i, 0), id(i + 1, 0), 1});
  for (int j = 0; j < n; ++j) edges.push_back({id(n, j), id(n, j + 1), 2});
  for (int i = n; i > 0; --i) edges.push_back({id(i, n), id(i - 1, n), 3});
  for (int j = n; j > 0; --j) edges.push_back({id(0, j), id(0, j - 1), 4});
  return make_mesh(std::move(vertices), std::move(triangles), std::move(edges));
}

TriMesh load_mesh(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_mesh(in);
}

TriMesh load_mesh(std::istream& in) {
  std::string line;
  int line_no = 0;
  // Returns the tokens of the next non-empty, non-comment line.
  auto next_tokens = [&](std::vector<std::string>& tokens) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      for (std::string tok; ls >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  };
  auto to_int = [&](const std::string& s) {
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ParseError(line_no, "expected integer, got '" + s + "'");
    return v;
  };
  auto to_double = [&](const std::string& s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ParseError(line_no, "expected number, got '" + s + "'");
    return v;
  };

  std::vector<std::string> tok;
  if (!next_tokens(tok)) throw ParseError(line_no, "empty mesh file");
  if (tok.size() != 4 || tok[0] != "mesh2d")
    throw ParseError(line_no, "expected header 'mesh2d <nv> <nt> <nb>'");
  const int nv = to_int(tok[1]), nt = to_int(tok[2]), nb = to_int(tok[3]);
  if (nv < 0 || nt < 0 || nb < 0) throw ParseError(line_no, "negative counts in header");

  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> edges;
  auto expect = [&](const char* tag, std::size_t n_fields) {
    if (!next_tokens(tok)) throw ParseError(line_no, std::string("unexpected end of file, expected '") + tag + "' line");
    if (tok[0] != tag || tok.size() != n_fields)
      throw ParseError(line_no, std::string("expected '") + tag + "' line with " +
                                    std::to_string(n_fields - 1) + " fields");
  };
  auto index = [&](const std::string& s) {
    const int v = to_int(s);
    if (v < 0 || v >= nv)
      throw ParseError(line_no, "vertex index " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(nv) + ")");
    return v;
  };
  for (int k = 0; k < nv; ++k) {
    expect("v", 3);
    vertices.emplace_back(to_double(tok[1]), to_double(tok[2]));
  }
  for (int k = 0; k < nt; ++k) {
    expect("t", 4);
    triangles.push_back({index(tok[1]), index(tok[2]), index(tok[3])});
  }
  for (int k = 0; k < nb; ++k) {
    expect("b", 4);
    edges.push_back({index(tok[1]), index(tok[2]), to_int(tok[3])});
  }
  if (next_tokens(tok)) throw ParseError(line_no, "trailing content after mesh records");
  return make_mesh(std::move(vertices), std::move(triangles), std::move(edges));
}

std::string save_mesh(const TriMesh& mesh) {
  std::string out = "mesh2d " + std::to_string(mesh.vertices.size()) + " " +
                    std::to_string(mesh.triangles.size()) + " " +
                    std::to_string(mesh.boundary_edges.size()) + "\n";
  for (const auto& v : mesh.vertices) out += "v " + format_double(v.x()) + " " + format_double(v.y()) + "\n";
  for (const auto& t : mesh.triangles)
    out += "t " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  for (const auto& e : mesh.boundary_edges)
    out += "b " + std::to_string(e.i) + " " + std::to_string(e.j) + " " + std::to_string(e.marker) + "\n";
  return out;
}

std::vector<Vec2> boundary_vertex_normals(const TriMesh& mesh) {
  std::vector<Vec2> normals(mesh.boundary_vertices.size(), Vec2::Zero());
  for (const auto& e : mesh.boundary_edges) {
    const Vec2 d = mesh.vertices[e.j] - mesh.vertices[e.i];
    const Vec2 n(d.y(), -d.x());  // domain on the left => outward is to the right
    normals[mesh.boundary_slot[e.i]] += n.normalized();
    normals[mesh.boundary_slot[e.j]] += n.normalized();
  }
  for (auto& n : normals) n.normalize();
  return normals;
}

}  // namespace dynbc
