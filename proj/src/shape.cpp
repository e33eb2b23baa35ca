#include "bistats/shape.hpp"

#include <Eigen/Sparse>
#include <numeric>
#include <sstream>

#include "bistats/errors.hpp"

namespace bistats {

namespace {

struct TriangleFrame {
  Eigen::Matrix3d edges_and_normal;  // [e1 | e2 | n]
  double double_area;
};

TriangleFrame frame_of(const std::array<Eigen::Vector3d, 3>& tri) {
  TriangleFrame f;
  const Eigen::Vector3d e1 = tri[1] - tri[0];
  const Eigen::Vector3d e2 = tri[2] - tri[0];
  const Eigen::Vector3d cross = e1.cross(e2);
  f.double_area = cross.norm();
  if (0.5 * f.double_area <= kMinFaceArea)
    throw DegenerateTriangleError("triangle area below " +
                                  std::to_string(kMinFaceArea));
  f.edges_and_normal.col(0) = e1;
  f.edges_and_normal.col(1) = e2;
  f.edges_and_normal.col(2) = cross / f.double_area;
  return f;
}

}  // namespace

GroupElement triangle_jacobian(const std::array<Eigen::Vector3d, 3>& ref_tri,
                               const std::array<Eigen::Vector3d, 3>& def_tri) {
  const TriangleFrame ref = frame_of(ref_tri);
  const TriangleFrame def = frame_of(def_tri);
  const Eigen::Matrix3d d =
      def.edges_and_normal * ref.edges_and_normal.inverse();
  if (!(d.determinant() > 0.0))
    throw OrientationFlipError(
        "deformation is not orientation-preserving (det <= 0)");
  return GroupElement{Group::gl_plus(3), d};
}

JacobianField mesh_to_field(std::shared_ptr<const TriangleMesh> reference,
                            const TriangleMesh& deformed) {
  if (!reference) throw ValidationError("mesh_to_field: null reference");
  if (reference->faces != deformed.faces)
    throw MeshError("mesh_to_field: face arrays differ");
  if (reference->vertex_count() != deformed.vertex_count())
    throw MeshError("mesh_to_field: vertex counts differ");

  JacobianField field;
  field.reference = std::move(reference);
  field.jacobians.reserve(field.reference->faces.size());
  const auto& ref = *field.reference;
  for (int i = 0; i < ref.face_count(); ++i) {
    const auto& f = ref.faces[static_cast<size_t>(i)];
    const std::array<Eigen::Vector3d, 3> rt{
        ref.vertices[static_cast<size_t>(f[0])],
        ref.vertices[static_cast<size_t>(f[1])],
        ref.vertices[static_cast<size_t>(f[2])]};
    const std::array<Eigen::Vector3d, 3> dt{
        deformed.vertices[static_cast<size_t>(f[0])],
        deformed.vertices[static_cast<size_t>(f[1])],
        deformed.vertices[static_cast<size_t>(f[2])]};
    try {
      field.jacobians.push_back(triangle_jacobian(rt, dt));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "face " << i << ": " << e.what();
      throw MeshError(msg.str());
    }
  }
  return field;
}

std::vector<std::pair<SampleSet, SampleSet>> per_triangle_samples(
    const std::vector<JacobianField>& fields, const std::vector<int>& labels) {
  if (fields.empty()) throw ValidationError("per_triangle_samples: no fields");
  if (fields.size() != labels.size())
    throw ValidationError("per_triangle_samples: one label per field required");
  const int faces = fields.front().face_count();
  for (const auto& f : fields)
    if (f.face_count() != faces)
      throw MeshError("per_triangle_samples: fields disagree on face count");
  bool has0 = false, has1 = false;
  for (int l : labels) {
    if (l == 0) has0 = true;
    else if (l == 1) has1 = true;
    else throw ValidationError("labels must be 0 or 1");
  }
  if (!has0 || !has1)
    throw ValidationError("per_triangle_samples: both classes must occur");

  const Group gl3 = fields.front().jacobians.front().group;
  std::vector<std::pair<SampleSet, SampleSet>> out;
  out.reserve(static_cast<size_t>(faces));
  for (int f = 0; f < faces; ++f) {
    std::vector<GroupElement> a, b;
    for (size_t s = 0; s < fields.size(); ++s) {
      const auto& j = fields[s].jacobians[static_cast<size_t>(f)];
      (labels[s] == 0 ? a : b).push_back(j);
    }
    out.emplace_back(SampleSet{gl3, std::move(a)}, SampleSet{gl3, std::move(b)});
  }
  return out;
}

namespace {

void require_connected(const TriangleMesh& mesh) {
  const int nv = mesh.vertex_count();
  std::vector<int> parent(static_cast<size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };
  for (const auto& f : mesh.faces) {
    const int r = find(f[0]);
    parent[static_cast<size_t>(find(f[1]))] = r;
    parent[static_cast<size_t>(find(f[2]))] = r;
  }
  const int root = find(0);
  for (int v = 1; v < nv; ++v)
    if (find(v) != root)
      throw MeshError("reconstruct: mesh is not edge-connected");
}

}  // namespace

TriangleMesh reconstruct(const TriangleMesh& reference,
                         const JacobianField& field, int anchor_vertex,
                         const Eigen::Vector3d& anchor_position) {
  validate_mesh(reference);
  if (field.face_count() != reference.face_count())
    throw ValidationError("reconstruct: field/mesh face counts differ");
  const int nv = reference.vertex_count();
  if (anchor_vertex < 0 || anchor_vertex >= nv)
    throw ValidationError("reconstruct: anchor vertex out of range");
  require_connected(reference);

  // Least-squares gradient fit: rows of the target jacobians are matched
  // by hat-function gradients, which constrains the edge action only.
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nv, 3);
  for (int t = 0; t < reference.face_count(); ++t) {
    const auto& f = reference.faces[static_cast<size_t>(t)];
    const Eigen::Vector3d p0 = reference.vertices[static_cast<size_t>(f[0])];
    const Eigen::Vector3d p1 = reference.vertices[static_cast<size_t>(f[1])];
    const Eigen::Vector3d p2 = reference.vertices[static_cast<size_t>(f[2])];
    const Eigen::Vector3d cross = (p1 - p0).cross(p2 - p0);
    const double area = 0.5 * cross.norm();
    const Eigen::Vector3d n = cross / cross.norm();

    Eigen::Matrix3d grads;  // hat-function gradients, one per column
    grads.col(0) = n.cross(p2 - p1) / (2.0 * area);
    grads.col(1) = n.cross(p0 - p2) / (2.0 * area);
    grads.col(2) = n.cross(p1 - p0) / (2.0 * area);

    const Eigen::Matrix3d& d = field.jacobians[static_cast<size_t>(t)].mat;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        triplets.emplace_back(f[static_cast<size_t>(a)],
                              f[static_cast<size_t>(b)],
                              area * grads.col(a).dot(grads.col(b)));
      }
      // sum_T area * grad_a . (row r of D) for each coordinate r
      rhs.row(f[static_cast<size_t>(a)]) +=
          area * (d * grads.col(a)).transpose();
    }
  }

  // Pin the anchor by substituting its value into the normal equations.
  Eigen::SparseMatrix<double> full(nv, nv);
  full.setFromTriplets(triplets.begin(), triplets.end());

  std::vector<int> to_free(static_cast<size_t>(nv), -1);
  int free_count = 0;
  for (int v = 0; v < nv; ++v)
    if (v != anchor_vertex) to_free[static_cast<size_t>(v)] = free_count++;

  std::vector<Eigen::Triplet<double>> reduced_triplets;
  Eigen::MatrixXd reduced_rhs = Eigen::MatrixXd::Zero(free_count, 3);
  for (int v = 0; v < nv; ++v) {
    if (v == anchor_vertex) continue;
    reduced_rhs.row(to_free[static_cast<size_t>(v)]) = rhs.row(v);
  }
  for (int col = 0; col < full.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(full, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (r == anchor_vertex) continue;
      if (c == anchor_vertex) {
        reduced_rhs.row(to_free[static_cast<size_t>(r)]) -=
            it.value() * anchor_position.transpose();
      } else {
        reduced_triplets.emplace_back(to_free[static_cast<size_t>(r)],
                                      to_free[static_cast<size_t>(c)],
                                      it.value());
      }
    }
  }
  Eigen::SparseMatrix<double> reduced(free_count, free_count);
  reduced.setFromTriplets(reduced_triplets.begin(), reduced_triplets.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(reduced);
  if (solver.info() != Eigen::Success)
    throw MeshError("reconstruct: singular system");
  const Eigen::MatrixXd solution = solver.solve(reduced_rhs);
  if (solver.info() != Eigen::Success)
    throw MeshError("reconstruct: sparse solve failed");

  TriangleMesh out;
  out.faces = reference.faces;
  out.vertices.resize(static_cast<size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    out.vertices[static_cast<size_t>(v)] =
        v == anchor_vertex
            ? anchor_position
            : Eigen::Vector3d(solution.row(to_free[static_cast<size_t>(v)]));
  }
  return out;
}

}  // namespace bistats
