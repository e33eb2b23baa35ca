#pragma once

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "bistats/mesh.hpp"
#include "bistats/stats.hpp"

namespace bistats {

/// Per-triangle GL+(3) elements describing a deformation of `reference`.
struct JacobianField {
  std::shared_ptr<const TriangleMesh> reference;
  std::vector<GroupElement> jacobians;

  int face_count() const { return static_cast<int>(jacobians.size()); }
};

/// The GL+(3) matrix mapping reference edges to deformed edges and the
/// reference unit normal to the deformed unit normal:
/// D = [w1-w0 | w2-w0 | n'] [v1-v0 | v2-v0 | n]^-1.
GroupElement triangle_jacobian(const std::array<Eigen::Vector3d, 3>& ref_tri,
                               const std::array<Eigen::Vector3d, 3>& def_tri);

/// triangle_jacobian per corresponding face pair. Requires identical face
/// arrays; the first face-level failure aborts with the face index.
JacobianField mesh_to_field(std::shared_ptr<const TriangleMesh> reference,
                            const TriangleMesh& deformed);

/// For each face, splits the per-subject jacobians by class label into a
/// pair of sample sets ready for batch testing. Labels are 0/1; both
/// classes must occur.
std::vector<std::pair<SampleSet, SampleSet>> per_triangle_samples(
    const std::vector<JacobianField>& fields, const std::vector<int>& labels);

/// Vertex positions minimizing sum_T area(T) ||grad phi|_T - D_T||_F^2
/// with the anchor vertex pinned, solved as one sparse SPD system per
/// coordinate. For an integrable field this reproduces the deformed mesh
/// up to the translation fixed by the anchor.
TriangleMesh reconstruct(const TriangleMesh& reference,
                         const JacobianField& field, int anchor_vertex,
                         const Eigen::Vector3d& anchor_position);

}  // namespace bistats
