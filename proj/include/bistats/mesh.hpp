#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace bistats {

/// Triangle mesh with consistent outward orientation. Positions in mm.
struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
};

inline constexpr double kMinFaceArea = 1e-12;

double face_area(const TriangleMesh& mesh, int face);
Eigen::Vector3d face_normal(const TriangleMesh& mesh, int face);

/// Throws MeshError on out-of-range indices or degenerate faces.
void validate_mesh(const TriangleMesh& mesh);

/// Readers accept vertices and triangular faces only; any other record is
/// rejected with a message naming the line.
TriangleMesh read_off(std::istream& in);
TriangleMesh read_obj(std::istream& in);
/// Dispatch on extension (.off/.obj).
TriangleMesh read_mesh(const std::string& path);

void write_off(std::ostream& out, const TriangleMesh& mesh);
void write_obj(std::ostream& out, const TriangleMesh& mesh);
void write_mesh(const std::string& path, const TriangleMesh& mesh);

/// ASCII PLY with a per-face `quality` property.
void write_ply_face_quality(std::ostream& out, const TriangleMesh& mesh,
                            const std::vector<double>& face_quality);
void write_ply_face_quality(const std::string& path, const TriangleMesh& mesh,
                            const std::vector<double>& face_quality);

/// Per-face scalars as CSV rows "face_index,value".
void write_face_scalars_csv(std::ostream& out,
                            const std::vector<double>& values);

}  // namespace bistats
