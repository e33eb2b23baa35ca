#include "bistats/group.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <sstream>

#include "bistats/errors.hpp"
#include "bistats/matrix_functions.hpp"

namespace bistats {

struct Group::Impl {
  GroupKind kind;
  int param = 0;  // n for GL+(n), k for Euclidean; unused otherwise
  int matrix_size = 0;
  int dim = 0;
  std::vector<Eigen::MatrixXd> basis;
  // Rows are flattened basis matrices; coords solve basis_flat^T c = vec(T).
  Eigen::MatrixXd basis_flat;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> coord_solver;

  void finalize() {
    const int nn = matrix_size * matrix_size;
    basis_flat.resize(nn, dim);
    for (int i = 0; i < dim; ++i) {
      Eigen::MatrixXd b = basis[static_cast<size_t>(i)];
      basis_flat.col(i) = Eigen::Map<Eigen::VectorXd>(b.data(), nn);
    }
    coord_solver.compute(basis_flat);
    if (coord_solver.rank() != dim)
      throw ValidationError("group basis matrices are linearly dependent");
  }
};

namespace {

Eigen::MatrixXd unit_matrix(int n, int r, int c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(r, c) = 1.0;
  return m;
}

Eigen::MatrixXd so3_generator(int axis) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 3);
  switch (axis) {
    case 0: g(1, 2) = -1; g(2, 1) = 1; break;
    case 1: g(0, 2) = 1; g(2, 0) = -1; break;
    default: g(0, 1) = -1; g(1, 0) = 1; break;
  }
  return g;
}

}  // namespace

Group Group::gl_plus(int n) {
  if (n < 1) throw ValidationError("gl_plus: n must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::GLPlus;
  impl->param = n;
  impl->matrix_size = n;
  impl->dim = n * n;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) impl->basis.push_back(unit_matrix(n, r, c));
  impl->finalize();
  return Group(std::move(impl));
}

Group Group::so3() {
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::SO3;
  impl->matrix_size = 3;
  impl->dim = 3;
  for (int i = 0; i < 3; ++i) impl->basis.push_back(so3_generator(i));
  impl->finalize();
  return Group(std::move(impl));
}

Group Group::se3() {
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::SE3;
  impl->matrix_size = 4;
  impl->dim = 6;
  // Rotation generators first, then translation generators.
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
    g.topLeftCorner<3, 3>() = so3_generator(i);
    impl->basis.push_back(g);
  }
  for (int i = 0; i < 3; ++i) impl->basis.push_back(unit_matrix(4, i, 3));
  impl->finalize();
  return Group(std::move(impl));
}

Group Group::euclidean(int k) {
  if (k < 1) throw ValidationError("euclidean: k must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::Euclidean;
  impl->param = k;
  impl->matrix_size = k + 1;
  impl->dim = k;
  for (int i = 0; i < k; ++i) impl->basis.push_back(unit_matrix(k + 1, i, k));
  impl->finalize();
  return Group(std::move(impl));
}

Group Group::with_basis(std::vector<Eigen::MatrixXd> basis) const {
  if (static_cast<int>(basis.size()) != impl_->dim)
    throw ValidationError("with_basis: wrong number of basis matrices");
  for (const auto& b : basis)
    if (b.rows() != impl_->matrix_size || b.cols() != impl_->matrix_size)
      throw ValidationError("with_basis: wrong basis matrix size");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->basis = std::move(basis);
  impl->finalize();
  return Group(std::move(impl));
}

GroupKind Group::kind() const { return impl_->kind; }
int Group::matrix_size() const { return impl_->matrix_size; }
int Group::dim() const { return impl_->dim; }
const std::vector<Eigen::MatrixXd>& Group::basis() const {
  return impl_->basis;
}

Eigen::MatrixXd Group::identity_mat() const {
  return Eigen::MatrixXd::Identity(impl_->matrix_size, impl_->matrix_size);
}

bool Group::contains(const Eigen::MatrixXd& m, double tol) const {
  const int n = impl_->matrix_size;
  if (m.rows() != n || m.cols() != n || !m.allFinite()) return false;
  switch (impl_->kind) {
    case GroupKind::GLPlus:
      return m.partialPivLu().determinant() > 0.0;
    case GroupKind::SO3: {
      const Eigen::Matrix3d r = m;
      return (r.transpose() * r - Eigen::Matrix3d::Identity())
                     .cwiseAbs()
                     .maxCoeff() <= tol &&
             std::abs(r.determinant() - 1.0) <= tol;
    }
    case GroupKind::SE3: {
      if ((m.row(3) - Eigen::RowVector4d(0, 0, 0, 1).eval()).cwiseAbs().maxCoeff() >
          tol)
        return false;
      const Eigen::Matrix3d r = m.topLeftCorner<3, 3>();
      return (r.transpose() * r - Eigen::Matrix3d::Identity())
                     .cwiseAbs()
                     .maxCoeff() <= tol &&
             std::abs(r.determinant() - 1.0) <= tol;
    }
    case GroupKind::Euclidean: {
      Eigen::MatrixXd pattern = m - Eigen::MatrixXd::Identity(n, n);
      pattern.col(n - 1).head(n - 1).setZero();  // translation entries free
      return pattern.cwiseAbs().maxCoeff() <= tol;
    }
  }
  return false;
}

Eigen::MatrixXd Group::from_coords(const Eigen::VectorXd& coords) const {
  if (coords.size() != impl_->dim)
    throw ValidationError("from_coords: wrong coordinate length");
  const int n = impl_->matrix_size;
  Eigen::VectorXd flat = impl_->basis_flat * coords;
  return Eigen::Map<Eigen::MatrixXd>(flat.data(), n, n);
}

Eigen::VectorXd Group::to_coords(const Eigen::MatrixXd& tangent) const {
  const int n = impl_->matrix_size;
  if (tangent.rows() != n || tangent.cols() != n)
    throw ValidationError("to_coords: wrong matrix size");
  Eigen::MatrixXd t = tangent;
  Eigen::Map<Eigen::VectorXd> flat(t.data(), n * n);
  return impl_->coord_solver.solve(flat);
}

std::string Group::name() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case GroupKind::GLPlus: os << "GLplus(" << impl_->param << ")"; break;
    case GroupKind::SO3: os << "SO3"; break;
    case GroupKind::SE3: os << "SE3"; break;
    case GroupKind::Euclidean:
      os << "EuclideanVector(" << impl_->param << ")";
      break;
  }
  return os.str();
}

Group Group::parse(const std::string& token) {
  if (token == "SO3") return so3();
  if (token == "SE3") return se3();
  auto parenthesized = [&](const std::string& prefix, int& out) {
    if (token.size() < prefix.size() + 3 || token.back() != ')' ||
        token.compare(0, prefix.size() + 1, prefix + "(") != 0)
      return false;
    const std::string inner =
        token.substr(prefix.size() + 1, token.size() - prefix.size() - 2);
    try {
      size_t pos = 0;
      out = std::stoi(inner, &pos);
      return pos == inner.size() && out >= 1;
    } catch (const std::exception&) {
      return false;
    }
  };
  int n = 0;
  if (parenthesized("GLplus", n)) return gl_plus(n);
  if (parenthesized("EuclideanVector", n)) return euclidean(n);
  throw ParseError("unknown group '" + token +
                   "' (expected SO3, SE3, GLplus(n) or EuclideanVector(k))");
}

bool operator==(const Group& a, const Group& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.impl_->kind != b.impl_->kind || a.impl_->param != b.impl_->param ||
      a.impl_->matrix_size != b.impl_->matrix_size ||
      a.impl_->dim != b.impl_->dim)
    return false;
  for (size_t i = 0; i < a.impl_->basis.size(); ++i)
    if (a.impl_->basis[i] != b.impl_->basis[i]) return false;
  return true;
}

GroupElement make_element(const Group& g, Eigen::MatrixXd m, double tol) {
  if (!g.contains(m, tol))
    throw MembershipError("matrix is not a member of " + g.name());
  return GroupElement{g, std::move(m)};
}

GroupElement identity_element(const Group& g) {
  return GroupElement{g, g.identity_mat()};
}

TangentVector make_tangent(const Group& g, Eigen::VectorXd coords) {
  if (coords.size() != g.dim())
    throw ValidationError("tangent coordinate length must equal group dim");
  return TangentVector{g, std::move(coords)};
}

namespace {

void require_same_group(const Group& a, const Group& b, const char* op) {
  if (a != b)
    throw DescriptorMismatchError(std::string(op) +
                                  ": elements from different groups");
}

}  // namespace

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  require_same_group(a.group, b.group, "compose");
  return GroupElement{a.group, a.mat * b.mat};
}

GroupElement inverse(const GroupElement& g) {
  switch (g.group.kind()) {
    case GroupKind::SO3:
      return GroupElement{g.group, g.mat.transpose()};
    case GroupKind::SE3: {
      Eigen::Matrix4d inv = Eigen::Matrix4d::Identity();
      const Eigen::Matrix3d rt = g.mat.topLeftCorner<3, 3>().transpose();
      inv.topLeftCorner<3, 3>() = rt;
      inv.topRightCorner<3, 1>() = -rt * g.mat.topRightCorner<3, 1>();
      return GroupElement{g.group, inv};
    }
    case GroupKind::Euclidean: {
      const int n = g.group.matrix_size();
      Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
      inv.col(n - 1).head(n - 1) = -g.mat.col(n - 1).head(n - 1);
      return GroupElement{g.group, inv};
    }
    case GroupKind::GLPlus: {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(g.mat);
      if (!(std::abs(lu.determinant()) > 0))
        throw MembershipError("inverse: singular matrix");
      return GroupElement{g.group, lu.inverse()};
    }
  }
  throw ValidationError("inverse: unknown group kind");
}

GroupElement group_exp(const TangentVector& v) {
  if (v.coords.size() != v.group.dim())
    throw ValidationError("group_exp: wrong coordinate length");
  return GroupElement{v.group, matrix_exp(v.group.from_coords(v.coords))};
}

TangentVector group_log(const GroupElement& g) {
  return TangentVector{g.group, g.group.to_coords(matrix_log(g.mat))};
}

Eigen::MatrixXd adjoint(const GroupElement& g) {
  const GroupElement ginv = inverse(g);
  const int k = g.group.dim();
  Eigen::MatrixXd ad(k, k);
  for (int i = 0; i < k; ++i) {
    const Eigen::MatrixXd conj =
        g.mat * g.group.basis()[static_cast<size_t>(i)] * ginv.mat;
    ad.col(i) = g.group.to_coords(conj);
  }
  return ad;
}

TangentVector log_at(const GroupElement& g, const GroupElement& h) {
  require_same_group(g.group, h.group, "log_at");
  return group_log(compose(inverse(g), h));
}

}  // namespace bistats
