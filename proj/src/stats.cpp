#include "bistats/stats.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "bistats/errors.hpp"
#include "bistats/matrix_functions.hpp"

namespace bistats {

SampleSet make_sample_set(const Group& g, std::vector<GroupElement> elements) {
  if (elements.empty()) throw ValidationError("sample set must be non-empty");
  for (const auto& e : elements)
    if (e.group != g)
      throw DescriptorMismatchError("sample set mixes group descriptors");
  return SampleSet{g, std::move(elements)};
}

namespace {

// Coordinates of log(base_inv * g_i), with the element index attached to
// domain failures so callers can report the offending sample.
Eigen::VectorXd log_coords_at(const Group& group,
                              const Eigen::MatrixXd& base_inv,
                              const GroupElement& g, int index) {
  try {
    return group.to_coords(matrix_log(base_inv * g.mat));
  } catch (const OutOfDomainError& e) {
    std::ostringstream msg;
    msg << "element " << index << ": " << e.what();
    throw OutOfDomainError(msg.str());
  }
}

}  // namespace

MeanResult bi_invariant_mean(const SampleSet& s, double tol, int max_iter) {
  if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
  const int m = s.size();
  GroupElement mean = s.elements.front();
  Eigen::VectorXd update(s.group.dim());
  for (int iter = 1; iter <= max_iter; ++iter) {
    update.setZero();
    const Eigen::MatrixXd mean_inv = inverse(mean).mat;
    for (int i = 0; i < m; ++i)
      update +=
          log_coords_at(s.group, mean_inv, s.elements[static_cast<size_t>(i)], i);
    update /= m;
    const double update_norm = update.norm();
    if (update_norm <= tol)
      return MeanResult{mean, iter, update_norm * m};
    mean = compose(mean, group_exp(make_tangent(s.group, update)));
  }
  throw NoConvergenceError("bi_invariant_mean: no convergence within " +
                           std::to_string(max_iter) + " iterations");
}

Covariance centralized_covariance(const SampleSet& s,
                                  const GroupElement& mean) {
  if (mean.group != s.group)
    throw DescriptorMismatchError("covariance: mean from different group");
  const int k = s.group.dim();
  const int m = s.size();
  const Eigen::MatrixXd mean_inv = inverse(mean).mat;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd v =
        log_coords_at(s.group, mean_inv, s.elements[static_cast<size_t>(i)], i);
    sum.noalias() += v * v.transpose();
  }
  sum /= m;
  sum = 0.5 * (sum + sum.transpose()).eval();
  return Covariance{s.group, std::move(sum)};
}

Covariance pooled_covariance(const Covariance& sg, int m, const Covariance& sh,
                             int n) {
  if (sg.group != sh.group)
    throw DescriptorMismatchError("pooled_covariance: different groups");
  if (m + n <= 2)
    throw ValidationError("pooled_covariance: requires m + n > 2");
  Eigen::MatrixXd pooled = (m * sg.mat + n * sh.mat) / (m + n - 2);
  return Covariance{sg.group, std::move(pooled)};
}

namespace {

struct CovFactorization {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;

  explicit CovFactorization(const Eigen::MatrixXd& cov) : eig(cov) {
    const auto& ev = eig.eigenvalues();
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    if (!(lo > 0.0) || hi / lo > kCovConditionLimit) {
      std::ostringstream msg;
      msg << "covariance is singular at condition bound " << kCovConditionLimit
          << " (eigenvalue range [" << lo << ", " << hi << "])";
      throw SingularCovarianceError(msg.str());
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& v) const {
    return eig.eigenvectors() *
           (eig.eigenvectors().transpose() * v).cwiseQuotient(
               eig.eigenvalues());
  }

  double log_det() const { return eig.eigenvalues().array().log().sum(); }
};

void require_positive_spectrum(const Eigen::MatrixXd& cov, const char* label) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov,
                                                     Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
    throw NonpositiveDeterminantError(
        std::string(label) + ": covariance determinant is not positive");
}

}  // namespace

double mahalanobis_sq(const GroupElement& mean, const Covariance& cov,
                      const GroupElement& f) {
  if (mean.group != cov.group || f.group != cov.group)
    throw DescriptorMismatchError("mahalanobis_sq: group mismatch");
  const CovFactorization fact(cov.mat);
  const Eigen::VectorXd v = log_at(mean, f).coords;
  return v.dot(fact.solve(v));
}

double hotelling_t2(const SampleSet& s1, const SampleSet& s2,
                    const MeanSettings& settings) {
  if (s1.group != s2.group)
    throw DescriptorMismatchError("hotelling_t2: different groups");
  const int m = s1.size();
  const int n = s2.size();
  if (m + n <= 2) throw ValidationError("hotelling_t2: requires m + n > 2");

  const MeanResult mg = bi_invariant_mean(s1, settings.tol, settings.max_iter);
  const MeanResult mh = bi_invariant_mean(s2, settings.tol, settings.max_iter);
  const Covariance cg = centralized_covariance(s1, mg.mean);
  const Covariance ch = centralized_covariance(s2, mh.mean);
  const Covariance pooled = pooled_covariance(cg, m, ch, n);

  const GroupElement diff = compose(inverse(mg.mean), mh.mean);
  const double mu2 =
      mahalanobis_sq(identity_element(s1.group), pooled, diff);
  return (static_cast<double>(m) * n / (m + n)) * mu2;
}

double bhattacharyya(const SampleSet& s1, const SampleSet& s2,
                     const MeanSettings& settings) {
  if (s1.group != s2.group)
    throw DescriptorMismatchError("bhattacharyya: different groups");

  const MeanResult mg = bi_invariant_mean(s1, settings.tol, settings.max_iter);
  const MeanResult mh = bi_invariant_mean(s2, settings.tol, settings.max_iter);
  const Covariance cg = centralized_covariance(s1, mg.mean);
  const Covariance ch = centralized_covariance(s2, mh.mean);

  require_positive_spectrum(cg.mat, "bhattacharyya: set 1");
  require_positive_spectrum(ch.mat, "bhattacharyya: set 2");
  const Eigen::MatrixXd s = 0.5 * (cg.mat + ch.mat);
  require_positive_spectrum(s, "bhattacharyya: average");

  const CovFactorization fact_s(s);
  const CovFactorization fact_g(cg.mat);
  const CovFactorization fact_h(ch.mat);

  const Eigen::VectorXd v = log_at(mg.mean, mh.mean).coords;
  const double mean_term = 0.125 * v.dot(fact_s.solve(v));
  const double det_term =
      0.5 * (fact_s.log_det() - 0.5 * (fact_g.log_det() + fact_h.log_det()));
  return mean_term + det_term;
}

}  // namespace bistats
