#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "dynbc/errors.hpp"
#include "dynbc/mesh.hpp"
#include "helpers.hpp"

using namespace dynbc;

namespace {

int euler(const TriMesh& m) { return m.num_vertices() - count_edges(m) + m.num_triangles(); }

const char* kSingleTriangle = R"(# reference triangle
mesh2d 3 1 3
v 0 0
v 1 0
v 0 1
t 0 1 2
b 0 1 1
b 1 2 1
b 2 0 1
)";

std::string invariant_of(const std::string& text) {
  try {
    load_mesh(text);
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  return "";
}

}  // namespace

TEST_CASE("disk mesh at h = 0.5 satisfies Euler and covers the disk area") {
  const TriMesh m = generate_disk_mesh(1.0, 0.5);
  CHECK(euler(m) == 1);
  for (int t = 0; t < m.num_triangles(); ++t) CHECK(signed_area(m, t) > 0.0);
  CHECK(std::abs(total_area(m) - std::numbers::pi) / std::numbers::pi <= 0.05);
}

TEST_CASE("disk mesh at h = 0.05 approximates the circumference") {
  const TriMesh m = generate_disk_mesh(1.0, 0.05);
  const int nb = m.num_boundary();
  const double polygon = 2.0 * nb * std::sin(std::numbers::pi / nb);
  CHECK(boundary_length(m) == doctest::Approx(polygon).epsilon(1e-12));
  CHECK(std::abs(boundary_length(m) - 2.0 * std::numbers::pi) <= 1e-3);
}

TEST_CASE("disk mesh geometry contract") {
  for (double h : {0.5, 0.3, 0.2, 0.1, 0.07, 0.05}) {
    CAPTURE(h);
    const TriMesh m = generate_disk_mesh(1.0, h);
    CHECK_NOTHROW(validate(m));
    for (int v : m.boundary_vertices) CHECK(std::abs(m.vertices[v].norm() - 1.0) <= 1e-12);
    CHECK(max_edge_length(m) <= 1.5 * h);
  }
  const TriMesh big = generate_disk_mesh(2.5, 0.4);
  for (int v : big.boundary_vertices) CHECK(std::abs(big.vertices[v].norm() - 2.5) <= 2.5e-12);
}

TEST_CASE("halving h at least doubles the disk boundary vertex count") {
  for (double h : {0.4, 0.2, 0.1, 0.05}) {
    CAPTURE(h);
    CHECK(generate_disk_mesh(1.0, h / 2).num_boundary() >= 2 * generate_disk_mesh(1.0, h).num_boundary());
  }
}

TEST_CASE("disk mesh is deterministic") {
  CHECK(save_mesh(generate_disk_mesh(1.0, 0.15)) == save_mesh(generate_disk_mesh(1.0, 0.15)));
}

TEST_CASE("disk mesh rejects bad parameters") {
  CHECK_THROWS_AS(generate_disk_mesh(0.0, 0.1), InvalidParameter);
  CHECK_THROWS_AS(generate_disk_mesh(1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(generate_disk_mesh(1.0, -0.1), InvalidParameter);
  CHECK_THROWS_AS(generate_disk_mesh(1.0, 1.5), InvalidParameter);
}

TEST_CASE("square mesh counts and area") {
  const TriMesh m1 = generate_square_mesh(1.0, 1);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_triangles() == 2);
  CHECK(m1.boundary_edges.size() == 4);

  const TriMesh m2 = generate_square_mesh(1.0, 2);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_triangles() == 8);
  CHECK(m2.boundary_edges.size() == 8);
  CHECK(m2.num_interior() == 1);

  CHECK(total_area(generate_square_mesh(2.0, 4)) == 4.0);
  CHECK_THROWS_AS(generate_square_mesh(1.0, 0), InvalidParameter);
  CHECK_THROWS_AS(generate_square_mesh(-1.0, 2), InvalidParameter);
}

TEST_CASE("boundary edges are counter-clockwise with the domain on the left") {
  for (const TriMesh& m : {generate_square_mesh(1.0, 3), generate_disk_mesh(1.0, 0.2)}) {
    double signed_sum = 0.0;  // shoelace over boundary edges
    for (const auto& e : m.boundary_edges) {
      const Point& a = m.vertices[e.i];
      const Point& b = m.vertices[e.j];
      signed_sum += a.x() * b.y() - b.x() * a.y();
    }
    CHECK(0.5 * signed_sum == doctest::Approx(total_area(m)).epsilon(1e-12));
  }
}

TEST_CASE("vertex partition") {
  const TriMesh m = generate_disk_mesh(1.0, 0.25);
  std::set<int> all(m.boundary_vertices.begin(), m.boundary_vertices.end());
  for (int v : m.interior_vertices) CHECK(all.insert(v).second);
  CHECK(static_cast<int>(all.size()) == m.num_vertices());
  for (int b = 0; b < m.num_boundary(); ++b) CHECK(m.boundary_slot[m.boundary_vertices[b]] == b);
  for (int i = 0; i < m.num_interior(); ++i) CHECK(m.interior_slot[m.interior_vertices[i]] == i);
}

TEST_CASE("single triangle file") {
  const TriMesh m = load_mesh(kSingleTriangle);
  CHECK(m.num_vertices() == 3);
  CHECK(m.num_triangles() == 1);
  CHECK(m.boundary_edges.size() == 3);
  CHECK(m.num_interior() == 0);
}

TEST_CASE("save/load round trip") {
  const std::string canonical = save_mesh(load_mesh(kSingleTriangle));
  CHECK(save_mesh(load_mesh(canonical)) == canonical);

  const TriMesh d = generate_disk_mesh(1.0, 0.3);
  const TriMesh back = load_mesh(save_mesh(d));
  CHECK(back.vertices == d.vertices);
  CHECK(back.triangles == d.triangles);
  CHECK(back.boundary_edges == d.boundary_edges);
  CHECK(back.boundary_vertices == d.boundary_vertices);
  CHECK(back.interior_vertices == d.interior_vertices);
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("vertex index out of range") {
    const std::string bad = "mesh2d 3 1 3\nv 0 0\nv 1 0\nv 0 1\nt 0 1 7\nb 0 1 1\nb 1 2 1\nb 2 0 1\n";
    try {
      load_mesh(bad);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
    }
  }
  SUBCASE("malformed header") { CHECK_THROWS_AS(load_mesh("mesh3d 3 1 3\n"), ParseError); }
  SUBCASE("bad number") {
    try {
      load_mesh("mesh2d 3 1 3\nv 0 zero\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("truncated file") { CHECK_THROWS_AS(load_mesh("mesh2d 3 1 3\nv 0 0\n"), ParseError); }
  SUBCASE("trailing records") {
    CHECK_THROWS_AS(load_mesh(std::string(kSingleTriangle) + "v 2 2\n"), ParseError);
  }
}

TEST_CASE("invariant violations name the invariant") {
  // Clockwise triangle.
  CHECK(invariant_of("mesh2d 3 1 3\nv 0 0\nv 1 0\nv 0 1\nt 0 2 1\nb 0 1 1\nb 1 2 1\nb 2 0 1\n") == "positive-area");
  // Unused vertex.
  CHECK(invariant_of("mesh2d 4 1 3\nv 0 0\nv 1 0\nv 0 1\nv 5 5\nt 0 1 2\nb 0 1 1\nb 1 2 1\nb 2 0 1\n") ==
        "vertex-used");
  // Missing boundary edge.
  CHECK(invariant_of("mesh2d 3 1 2\nv 0 0\nv 1 0\nv 0 1\nt 0 1 2\nb 0 1 1\nb 1 2 1\n") == "boundary-edges");
  // Boundary edge with the wrong orientation.
  CHECK(invariant_of("mesh2d 3 1 3\nv 0 0\nv 1 0\nv 0 1\nt 0 1 2\nb 1 0 1\nb 1 2 1\nb 2 0 1\n") ==
        "boundary-edges");
  // Three triangles sharing one edge.
  CHECK(invariant_of("mesh2d 5 3 0\nv 0 0\nv 1 0\nv 0 1\nv 0 -1\nv 1 1\nt 0 1 2\nt 0 3 1\nt 0 1 4\n") ==
        "edge-manifold");
}

TEST_CASE("boundary vertex normals are outward and unit") {
  const TriMesh m = generate_disk_mesh(1.0, 0.1);
  const auto normals = boundary_vertex_normals(m);
  REQUIRE(static_cast<int>(normals.size()) == m.num_boundary());
  for (int b = 0; b < m.num_boundary(); ++b) {
    CHECK(normals[b].norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normals[b].dot(m.vertices[m.boundary_vertices[b]]) > 0.99);
  }
}
