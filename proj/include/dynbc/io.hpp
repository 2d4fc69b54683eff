#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "dynbc/mesh.hpp"

namespace dynbc {

/// Shortest round-trip decimal form ("nan", "inf", "-inf" for non-finite values).
std::string format_number(double x);

/// VTK legacy ASCII unstructured grid with one POINT_DATA scalar field.
/// `positions` overrides the mesh vertices when non-empty.
void write_vtk(std::ostream& out, const TriMesh& mesh, std::span<const Point> positions, std::string_view name,
               const Vector& values);

/// One row per matrix row, comma separated.
void write_dense_csv(std::ostream& out, const DenseMatrix& m);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace dynbc
