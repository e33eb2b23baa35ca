#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bistats/group.hpp"

namespace bistats {

/// An ordered collection of elements from one population, all in one group.
struct SampleSet {
  Group group;
  std::vector<GroupElement> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

/// Validates shared descriptor and non-emptiness.
SampleSet make_sample_set(const Group& g, std::vector<GroupElement> elements);

struct MeanResult {
  GroupElement mean;
  int iterations = 0;
  /// Norm of sum_i log(mean^-1 g_i) at the returned mean.
  double residual_norm = 0.0;
};

/// A k x k symmetric nonnegative matrix of tangent-coordinate second
/// moments, stored identity-translated (mean moved to e).
struct Covariance {
  Group group;
  Eigen::MatrixXd mat;
};

/// Condition-number bound above which covariances count as singular.
inline constexpr double kCovConditionLimit = 1e12;

/// Mean/convergence settings shared by the statistics entry points.
struct MeanSettings {
  double tol = 1e-12;
  int max_iter = 100;
};

/// Solution of sum_i log(mean^-1 g_i) = 0 by the fixed-point iteration
/// mean <- mean * exp((1/m) sum_i log(mean^-1 g_i)), initialized at the
/// first element, until the update norm drops below `tol`.
MeanResult bi_invariant_mean(const SampleSet& s, double tol = 1e-12,
                             int max_iter = 100);

/// (1/m) sum_i v_i v_i^T over v_i = log(mean^-1 g_i) coordinates.
Covariance centralized_covariance(const SampleSet& s, const GroupElement& mean);

/// (m * sg + n * sh) / (m + n - 2). Requires m + n > 2.
Covariance pooled_covariance(const Covariance& sg, int m, const Covariance& sh,
                             int n);

/// v^T cov^-1 v with v = log(mean^-1 f) coordinates. Throws
/// SingularCovarianceError when cov is not invertible at the condition
/// bound; there is deliberately no pseudo-inverse fallback, which would
/// break bi-invariance.
double mahalanobis_sq(const GroupElement& mean, const Covariance& cov,
                      const GroupElement& f);

/// Bi-invariant Hotelling's T^2: (mn/(m+n)) * mu^2_(e, pooled)(gbar^-1 hbar).
double hotelling_t2(const SampleSet& s1, const SampleSet& s2,
                    const MeanSettings& settings = {});

/// Bi-invariant Bhattacharyya distance:
///   (1/8) v^T S^-1 v + (1/2) ln(|S| / sqrt(|C1||C2|)),
/// with v = log(gbar^-1 hbar) coordinates and S = (C1 + C2)/2.
double bhattacharyya(const SampleSet& s1, const SampleSet& s2,
                     const MeanSettings& settings = {});

}  // namespace bistats
