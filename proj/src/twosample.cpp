#include "bistats/twosample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "bistats/errors.hpp"
#include "bistats/rng.hpp"

namespace bistats {

std::string statistic_name(Statistic s) {
  return s == Statistic::HotellingT2 ? "t2" : "bhattacharyya";
}

Statistic parse_statistic(const std::string& token) {
  if (token == "t2") return Statistic::HotellingT2;
  if (token == "bhattacharyya") return Statistic::Bhattacharyya;
  throw ParseError("unknown statistic '" + token +
                   "' (expected t2 or bhattacharyya)");
}

namespace {

double eval_statistic(Statistic which, const SampleSet& a, const SampleSet& b,
                      const MeanSettings& settings) {
  return which == Statistic::HotellingT2 ? hotelling_t2(a, b, settings)
                                         : bhattacharyya(a, b, settings);
}

// C(n, m), saturating at kExhaustiveLimit + 1.
std::int64_t binomial_capped(int n, int m) {
  if (m < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::int64_t c = 1;
  for (int i = 1; i <= m; ++i) {
    c = c * (n - m + i) / i;
    if (c > kExhaustiveLimit) return kExhaustiveLimit + 1;
  }
  return c;
}

// Lexicographically next m-subset of {0..n-1}; false when exhausted.
bool next_subset(std::vector<int>& comb, int n) {
  const int m = static_cast<int>(comb.size());
  int i = m - 1;
  while (i >= 0 && comb[static_cast<size_t>(i)] == n - m + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<size_t>(i)];
  for (int j = i + 1; j < m; ++j)
    comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  return true;
}

struct PermutationCounter {
  double threshold;  // observed value minus the tie tolerance
  std::int64_t exceed = 0;
  std::int64_t used = 0;
  std::int64_t degenerate = 0;

  void tally(double value) {
    if (value >= threshold) ++exceed;
    ++used;
  }
};

}  // namespace

TestResult permutation_test(const SampleSet& s1, const SampleSet& s2,
                            const PermutationConfig& cfg,
                            const MeanSettings& settings) {
  if (cfg.num_permutations < 1)
    throw ValidationError("num_permutations must be >= 1");
  if (s1.group != s2.group)
    throw DescriptorMismatchError("permutation_test: different groups");

  double observed;
  try {
    observed = eval_statistic(cfg.statistic, s1, s2, settings);
  } catch (const Error& e) {
    throw StatisticFailedError(
        std::string("statistic failed on the observed labeling: ") + e.what());
  }

  const int m = s1.size();
  const int n = s2.size();
  const int total = m + n;
  std::vector<GroupElement> pool;
  pool.reserve(static_cast<size_t>(total));
  pool.insert(pool.end(), s1.elements.begin(), s1.elements.end());
  pool.insert(pool.end(), s2.elements.begin(), s2.elements.end());

  // Ties count as exceeding; the tolerance keeps mathematically exact
  // ties (e.g. the complement partition for m = n) from being dropped to
  // floating-point noise.
  PermutationCounter counter{observed - 1e-12 * std::max(1.0, std::abs(observed))};

  std::vector<int> in_a(static_cast<size_t>(total), 0);
  auto eval_subset = [&](const std::vector<int>& subset) {
    std::fill(in_a.begin(), in_a.end(), 0);
    for (int idx : subset) in_a[static_cast<size_t>(idx)] = 1;
    std::vector<GroupElement> ea, eb;
    ea.reserve(static_cast<size_t>(m));
    eb.reserve(static_cast<size_t>(n));
    for (int i = 0; i < total; ++i)
      (in_a[static_cast<size_t>(i)] ? ea : eb)
          .push_back(pool[static_cast<size_t>(i)]);
    const SampleSet sa{s1.group, std::move(ea)};
    const SampleSet sb{s1.group, std::move(eb)};
    try {
      counter.tally(eval_statistic(cfg.statistic, sa, sb, settings));
    } catch (const Error&) {
      ++counter.degenerate;
    }
  };

  const std::int64_t partitions = binomial_capped(total, m);
  if (cfg.exhaustive && partitions <= kExhaustiveLimit) {
    // All partitions except the observed labeling; together with the +1
    // correction this reproduces the exact permutation p-value.
    std::vector<int> comb(static_cast<size_t>(m));
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<int> original = comb;
    do {
      if (comb != original) eval_subset(comb);
    } while (next_subset(comb, total));
  } else {
    std::vector<int> indices(static_cast<size_t>(total));
    std::vector<int> subset(static_cast<size_t>(m));
    for (int p = 0; p < cfg.num_permutations; ++p) {
      SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(p)));
      std::iota(indices.begin(), indices.end(), 0);
      for (int i = 0; i < m; ++i) {
        const auto j =
            i + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - i)));
        std::swap(indices[static_cast<size_t>(i)], indices[static_cast<size_t>(j)]);
        subset[static_cast<size_t>(i)] = indices[static_cast<size_t>(i)];
      }
      eval_subset(subset);
    }
  }

  const std::int64_t attempted = counter.used + counter.degenerate;
  if (counter.degenerate * 20 > attempted)
    throw StatisticFailedError(
        "more than 5% of permutations were degenerate (" +
        std::to_string(counter.degenerate) + " of " + std::to_string(attempted) +
        ")");

  TestResult result;
  result.statistic_value = observed;
  result.num_permutations_used = counter.used;
  result.num_exceeding = counter.exceed;
  result.degenerate_permutations = counter.degenerate;
  result.p_value = (1.0 + static_cast<double>(counter.exceed)) /
                   (1.0 + static_cast<double>(counter.used));
  return result;
}

FdrResult bh_fdr(const std::vector<double>& p_values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must lie in (0,1)");
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("p-values must lie in [0,1]");

  const size_t m = p_values.size();
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return p_values[a] < p_values[b];
  });

  FdrResult out;
  out.adjusted.resize(m);
  out.rejected.resize(m);
  double running = 1.0;
  for (size_t i = m; i-- > 0;) {
    const double scaled =
        p_values[order[i]] * static_cast<double>(m) / static_cast<double>(i + 1);
    running = std::min(running, std::min(1.0, scaled));
    out.adjusted[order[i]] = running;
  }
  for (size_t i = 0; i < m; ++i) out.rejected[i] = out.adjusted[i] < alpha;
  return out;
}

BatchResult batch_test(
    const std::vector<std::pair<SampleSet, SampleSet>>& features,
    const PermutationConfig& cfg, double alpha, int threads,
    const MeanSettings& settings) {
  if (features.empty()) throw ValidationError("batch_test: no features");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must lie in (0,1)");

  const size_t count = features.size();
  BatchResult batch;
  batch.per_feature.resize(count);

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads,
                                              static_cast<unsigned>(count)));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      PermutationConfig feature_cfg = cfg;
      feature_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
      FeatureOutcome& outcome = batch.per_feature[i];
      try {
        outcome.result = permutation_test(features[i].first, features[i].second,
                                          feature_cfg, settings);
        outcome.ok = true;
      } catch (const Error& e) {
        outcome.ok = false;
        outcome.error = e.what();
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> team;
    team.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) team.emplace_back(worker);
    for (auto& t : team) t.join();
  }

  // BH across the features that produced a p-value.
  std::vector<double> ps;
  std::vector<size_t> idx;
  for (size_t i = 0; i < count; ++i) {
    if (batch.per_feature[i].ok) {
      ps.push_back(batch.per_feature[i].result.p_value);
      idx.push_back(i);
    }
  }
  batch.adjusted_p.assign(count, std::numeric_limits<double>::quiet_NaN());
  batch.rejected.assign(count, false);
  if (!ps.empty()) {
    const FdrResult fdr = bh_fdr(ps, alpha);
    for (size_t j = 0; j < idx.size(); ++j) {
      batch.adjusted_p[idx[j]] = fdr.adjusted[j];
      batch.rejected[idx[j]] = fdr.rejected[j];
    }
  }
  return batch;
}

}  // namespace bistats
