#include "dynbc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dynbc/errors.hpp"

namespace dynbc {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_vtk(std::ostream& out, const TriMesh& mesh, std::span<const Point> positions, std::string_view name,
               const Vector& values) {
  const int nv = mesh.num_vertices();
  if (!positions.empty() && static_cast<int>(positions.size()) != nv)
    throw InvalidParameter("vtk: position count does not match the mesh");
  if (values.size() != nv) throw InvalidParameter("vtk: field length does not match the mesh");
  out << "# vtk DataFile Version 3.0\n" << name << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (int i = 0; i < nv; ++i) {
    const Point& p = positions.empty() ? mesh.vertices[i] : positions[i];
    out << format_number(p.x()) << ' ' << format_number(p.y()) << " 0\n";
  }
  out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (int k = 0; k < mesh.num_triangles(); ++k) out << "5\n";
  out << "POINT_DATA " << nv << "\nSCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nv; ++i) out << format_number(values[i]) << '\n';
}

void write_dense_csv(std::ostream& out, const DenseMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace dynbc
