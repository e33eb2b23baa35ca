#pragma once

// Independent reference implementations used to cross-check the library:
// closed forms and straight-line Euclidean formulas only, no calls into
// the code paths under test.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace oracles {

/// Rodrigues' rotation formula.
inline Eigen::Matrix3d rodrigues(const Eigen::Vector3d& axis, double angle) {
  const Eigen::Vector3d u = axis.normalized();
  Eigen::Matrix3d k;
  k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k +
         (1.0 - std::cos(angle)) * k * k;
}

/// Truncated Taylor series of the matrix exponential with term-size
/// stopping; adequate for moderate norms as an independent route.
inline Eigen::MatrixXd exp_series(const Eigen::MatrixXd& a, int max_terms = 80) {
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * a) / k;
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return sum;
}

/// Mercator series of log(I + X), ||X|| < 1. Slow but independent.
inline Eigen::MatrixXd log_series(const Eigen::MatrixXd& a,
                                  int max_terms = 400) {
  const Eigen::MatrixXd x =
      a - Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd power = x;
  Eigen::MatrixXd sum = x;
  for (int k = 2; k <= max_terms; ++k) {
    power = power * x;
    const Eigen::MatrixXd term = power / (k % 2 == 0 ? -k : k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  return sum;
}

inline Eigen::VectorXd vector_mean(const std::vector<Eigen::VectorXd>& xs) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(xs.front().size());
  for (const auto& x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

/// Biased sample covariance (1/m normalization).
inline Eigen::MatrixXd vector_covariance(
    const std::vector<Eigen::VectorXd>& xs) {
  const Eigen::VectorXd m = vector_mean(xs);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m.size(), m.size());
  for (const auto& x : xs) c += (x - m) * (x - m).transpose();
  return c / static_cast<double>(xs.size());
}

/// Classical two-sample Hotelling T^2 with the (m+n-2) pooled covariance.
inline double hotelling_t2(const std::vector<Eigen::VectorXd>& p,
                           const std::vector<Eigen::VectorXd>& q) {
  const auto m = static_cast<double>(p.size());
  const auto n = static_cast<double>(q.size());
  const Eigen::VectorXd diff = vector_mean(p) - vector_mean(q);
  const Eigen::MatrixXd pooled =
      (m * vector_covariance(p) + n * vector_covariance(q)) / (m + n - 2.0);
  return m * n / (m + n) * diff.dot(pooled.ldlt().solve(diff));
}

/// Classical Bhattacharyya distance between sample Gaussians.
inline double bhattacharyya(const std::vector<Eigen::VectorXd>& p,
                            const std::vector<Eigen::VectorXd>& q) {
  const Eigen::VectorXd diff = vector_mean(p) - vector_mean(q);
  const Eigen::MatrixXd cp = vector_covariance(p);
  const Eigen::MatrixXd cq = vector_covariance(q);
  const Eigen::MatrixXd s = 0.5 * (cp + cq);
  const double mean_term = 0.125 * diff.dot(s.ldlt().solve(diff));
  const double det_term =
      0.5 * std::log(s.determinant() /
                     std::sqrt(cp.determinant() * cq.determinant()));
  return mean_term + det_term;
}

/// Kolmogorov-Smirnov distance of a sample from U[0,1].
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - xs[i];
    const double lo = xs[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

}  // namespace oracles
