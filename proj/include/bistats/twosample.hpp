#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bistats/stats.hpp"

namespace bistats {

enum class Statistic { HotellingT2, Bhattacharyya };

std::string statistic_name(Statistic s);
Statistic parse_statistic(const std::string& token);

struct PermutationConfig {
  int num_permutations = 10000;
  std::uint64_t seed = 0;
  Statistic statistic = Statistic::HotellingT2;
  /// Enumerate all partitions instead of sampling when C(m+n, m) is at
  /// most kExhaustiveLimit; otherwise falls back to Monte Carlo.
  bool exhaustive = false;
};

inline constexpr std::int64_t kExhaustiveLimit = 200000;

struct TestResult {
  double statistic_value = 0.0;
  double p_value = 1.0;
  std::int64_t num_permutations_used = 0;
  std::int64_t num_exceeding = 0;
  /// Permutations skipped because the statistic failed on the relabeling.
  std::int64_t degenerate_permutations = 0;
};

/// Pools the observations, relabels them into groups of the original
/// sizes (all partitions in exhaustive mode, uniformly random otherwise),
/// and returns p = (1 + #{t_perm >= t_obs}) / (1 + #permutations).
/// Deterministic given cfg.seed. Throws StatisticFailedError if the
/// statistic fails on the observed labeling or if more than 5% of the
/// relabelings are degenerate.
TestResult permutation_test(const SampleSet& s1, const SampleSet& s2,
                            const PermutationConfig& cfg,
                            const MeanSettings& settings = {});

struct FdrResult {
  std::vector<double> adjusted;
  std::vector<bool> rejected;
};

/// Benjamini-Hochberg step-up adjustment. adjusted_(i) =
/// min_{j>=i} min(1, M p_(j) / j) over the ascending order, mapped back
/// to input order; rejected <=> adjusted < alpha.
FdrResult bh_fdr(const std::vector<double>& p_values, double alpha);

struct FeatureOutcome {
  bool ok = false;
  TestResult result;
  std::string error;
};

struct BatchResult {
  std::vector<FeatureOutcome> per_feature;
  /// NaN for features whose test failed (excluded from the correction).
  std::vector<double> adjusted_p;
  std::vector<bool> rejected;
};

/// Runs permutation_test per feature with seeds derived from cfg.seed and
/// the feature index, then BH adjustment across the successful features.
/// Per-feature failures are recorded, not fatal. `threads` = 0 uses the
/// hardware concurrency; results are independent of the thread count.
BatchResult batch_test(const std::vector<std::pair<SampleSet, SampleSet>>& features,
                       const PermutationConfig& cfg, double alpha,
                       int threads = 0, const MeanSettings& settings = {});

}  // namespace bistats
