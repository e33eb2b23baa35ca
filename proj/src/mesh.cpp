#include "bistats/mesh.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bistats/errors.hpp"

namespace bistats {

double face_area(const TriangleMesh& mesh, int face) {
  const auto& f = mesh.faces[static_cast<size_t>(face)];
  const Eigen::Vector3d e1 = mesh.vertices[static_cast<size_t>(f[1])] -
                             mesh.vertices[static_cast<size_t>(f[0])];
  const Eigen::Vector3d e2 = mesh.vertices[static_cast<size_t>(f[2])] -
                             mesh.vertices[static_cast<size_t>(f[0])];
  return 0.5 * e1.cross(e2).norm();
}

Eigen::Vector3d face_normal(const TriangleMesh& mesh, int face) {
  const auto& f = mesh.faces[static_cast<size_t>(face)];
  const Eigen::Vector3d e1 = mesh.vertices[static_cast<size_t>(f[1])] -
                             mesh.vertices[static_cast<size_t>(f[0])];
  const Eigen::Vector3d e2 = mesh.vertices[static_cast<size_t>(f[2])] -
                             mesh.vertices[static_cast<size_t>(f[0])];
  return e1.cross(e2).normalized();
}

void validate_mesh(const TriangleMesh& mesh) {
  const int nv = mesh.vertex_count();
  for (int i = 0; i < mesh.face_count(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const int v = mesh.faces[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (v < 0 || v >= nv)
        throw MeshError("face " + std::to_string(i) +
                        ": vertex index out of range");
    }
    if (face_area(mesh, i) <= kMinFaceArea)
      throw MeshError("face " + std::to_string(i) + ": degenerate (area <= " +
                      std::to_string(kMinFaceArea) + ")");
  }
}

namespace {

[[noreturn]] void parse_fail(const char* format, int line,
                             const std::string& what) {
  throw ParseError(std::string(format) + " line " + std::to_string(line) +
                   ": " + what);
}

// Reads the next line that carries content; strips comments and CR.
bool next_content_line(std::istream& in, std::string& line, int& line_no,
                       char comment) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find(comment);
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TriangleMesh read_off(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no, '#'))
    throw ParseError("OFF: empty file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") parse_fail("OFF", line_no, "missing OFF header");

  long nv = -1, nf = -1, ne = 0;
  // Counts may share the header line or follow it.
  if (!(header >> nv >> nf >> ne)) {
    if (!next_content_line(in, line, line_no, '#'))
      throw ParseError("OFF: missing element counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf >> ne))
      parse_fail("OFF", line_no, "expected vertex/face/edge counts");
  }
  if (nv < 0 || nf < 0) parse_fail("OFF", line_no, "negative element count");

  TriangleMesh mesh;
  mesh.vertices.reserve(static_cast<size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_content_line(in, line, line_no, '#'))
      throw ParseError("OFF: unexpected end of file in vertex list");
    std::istringstream row(line);
    Eigen::Vector3d v;
    if (!(row >> v.x() >> v.y() >> v.z()))
      parse_fail("OFF", line_no, "expected 3 vertex coordinates");
    mesh.vertices.push_back(v);
  }
  mesh.faces.reserve(static_cast<size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (!next_content_line(in, line, line_no, '#'))
      throw ParseError("OFF: unexpected end of file in face list");
    std::istringstream row(line);
    int arity = 0;
    if (!(row >> arity)) parse_fail("OFF", line_no, "expected face arity");
    if (arity != 3)
      parse_fail("OFF", line_no,
                 "only triangular faces are supported (got arity " +
                     std::to_string(arity) + ")");
    std::array<int, 3> f{};
    if (!(row >> f[0] >> f[1] >> f[2]))
      parse_fail("OFF", line_no, "expected 3 vertex indices");
    mesh.faces.push_back(f);
  }
  validate_mesh(mesh);
  return mesh;
}

TriangleMesh read_obj(std::istream& in) {
  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  while (next_content_line(in, line, line_no, '#')) {
    std::istringstream row(line);
    std::string tag;
    row >> tag;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(row >> v.x() >> v.y() >> v.z()))
        parse_fail("OBJ", line_no, "expected 3 vertex coordinates");
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      int extra;
      std::string token;
      int got = 0;
      while (row >> token) {
        if (token.find('/') != std::string::npos)
          parse_fail("OBJ", line_no,
                     "texture/normal face references are not supported");
        try {
          extra = std::stoi(token);
        } catch (const std::exception&) {
          parse_fail("OBJ", line_no, "bad face index '" + token + "'");
        }
        if (got >= 3)
          parse_fail("OBJ", line_no, "only triangular faces are supported");
        // OBJ indices are 1-based; negative indices count from the end.
        f[static_cast<size_t>(got++)] =
            extra > 0 ? extra - 1
                      : static_cast<int>(mesh.vertices.size()) + extra;
      }
      if (got != 3)
        parse_fail("OBJ", line_no, "expected 3 vertex indices");
      mesh.faces.push_back(f);
    } else {
      parse_fail("OBJ", line_no,
                 "unsupported record '" + tag +
                     "' (only v and f records are accepted)");
    }
  }
  validate_mesh(mesh);
  return mesh;
}

namespace {

enum class MeshFormat { Off, Obj };

MeshFormat format_of(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  if (ext == "off") return MeshFormat::Off;
  if (ext == "obj") return MeshFormat::Obj;
  throw ParseError("unsupported mesh extension in '" + path +
                   "' (expected .off or .obj)");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  return out;
}

}  // namespace

TriangleMesh read_mesh(const std::string& path) {
  auto in = open_input(path);
  return format_of(path) == MeshFormat::Off ? read_off(in) : read_obj(in);
}

void write_off(std::ostream& out, const TriangleMesh& mesh) {
  out << "OFF\n"
      << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices)
    out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces)
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices)
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_mesh(const std::string& path, const TriangleMesh& mesh) {
  auto out = open_output(path);
  if (format_of(path) == MeshFormat::Off)
    write_off(out, mesh);
  else
    write_obj(out, mesh);
}

void write_ply_face_quality(std::ostream& out, const TriangleMesh& mesh,
                            const std::vector<double>& face_quality) {
  if (static_cast<int>(face_quality.size()) != mesh.face_count())
    throw ValidationError("PLY export: one quality value per face required");
  out << "ply\nformat ascii 1.0\n"
      << "element vertex " << mesh.vertex_count() << '\n'
      << "property double x\nproperty double y\nproperty double z\n"
      << "element face " << mesh.face_count() << '\n'
      << "property list uchar int vertex_indices\n"
      << "property double quality\n"
      << "end_header\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices)
    out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (int i = 0; i < mesh.face_count(); ++i) {
    const auto& f = mesh.faces[static_cast<size_t>(i)];
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << ' '
        << face_quality[static_cast<size_t>(i)] << '\n';
  }
}

void write_ply_face_quality(const std::string& path, const TriangleMesh& mesh,
                            const std::vector<double>& face_quality) {
  auto out = open_output(path);
  write_ply_face_quality(out, mesh, face_quality);
}

void write_face_scalars_csv(std::ostream& out,
                            const std::vector<double>& values) {
  out << "face_index,value\n" << std::setprecision(17);
  for (size_t i = 0; i < values.size(); ++i)
    out << i << ',' << values[i] << '\n';
}

}  // namespace bistats
