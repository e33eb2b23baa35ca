#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace bistats {

enum class GroupKind { GLPlus, SO3, SE3, Euclidean };

/// Default tolerance for membership checks.
inline constexpr double kMembershipTol = 1e-9;

/// A matrix Lie group together with a fixed basis of its tangent space at
/// the identity. Cheap to copy (shared immutable state). All elements are
/// represented as square matrices: SE(3) as 4x4 homogeneous matrices and
/// R^k as (k+1)x(k+1) translation matrices, so one code path serves every
/// group.
class Group {
 public:
  static Group gl_plus(int n);
  static Group so3();
  static Group se3();
  static Group euclidean(int k);

  /// Same group with the tangent basis replaced. The new basis must have
  /// the same count and matrix size and be linearly independent.
  Group with_basis(std::vector<Eigen::MatrixXd> basis) const;

  GroupKind kind() const;
  /// Ambient square-matrix dimension.
  int matrix_size() const;
  /// Intrinsic dimension k (n^2 for GL+(n), 3 for SO(3), 6 for SE(3)).
  int dim() const;
  const std::vector<Eigen::MatrixXd>& basis() const;

  Eigen::MatrixXd identity_mat() const;
  bool contains(const Eigen::MatrixXd& m, double tol = kMembershipTol) const;

  /// Tangent matrix from coordinates: sum_i c_i B_i.
  Eigen::MatrixXd from_coords(const Eigen::VectorXd& coords) const;
  /// Coordinates of a tangent matrix in the fixed basis.
  Eigen::VectorXd to_coords(const Eigen::MatrixXd& tangent) const;

  /// Canonical token: "SO3", "SE3", "GLplus(n)", "EuclideanVector(k)".
  std::string name() const;
  static Group parse(const std::string& token);

  friend bool operator==(const Group& a, const Group& b);
  friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

 private:
  struct Impl;
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An element of a matrix Lie group.
struct GroupElement {
  Group group;
  Eigen::MatrixXd mat;
};

/// A tangent vector at the identity, stored as coordinates in the group's
/// fixed basis.
struct TangentVector {
  Group group;
  Eigen::VectorXd coords;
};

/// Membership-checked constructor.
GroupElement make_element(const Group& g, Eigen::MatrixXd m,
                          double tol = kMembershipTol);
GroupElement identity_element(const Group& g);
TangentVector make_tangent(const Group& g, Eigen::VectorXd coords);

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);
GroupElement group_exp(const TangentVector& v);
TangentVector group_log(const GroupElement& g);

/// Matrix of X -> coords(g * mat(X) * g^-1) in the fixed basis.
Eigen::MatrixXd adjoint(const GroupElement& g);

/// Coordinates of log(g^-1 h), the identity-translated difference of h
/// and g.
TangentVector log_at(const GroupElement& g, const GroupElement& h);

}  // namespace bistats
