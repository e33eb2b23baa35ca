#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bistats/stats.hpp"
#include "bistats/twosample.hpp"

#include <json.hpp>

namespace bistats {

/// Sample files: one element per CSV row, flattened row-major, with a
/// `# group=NAME` header; or the JSON equivalent
/// {"group": NAME, "elements": [[...], ...]}. EuclideanVector rows may
/// carry either the full matrix or just the k translation entries.
/// `expected` cross-checks the file's group when provided.
SampleSet read_samples_csv(std::istream& in,
                           const std::optional<Group>& expected = {});
SampleSet read_samples_json(std::istream& in,
                            const std::optional<Group>& expected = {});
/// Dispatch: .json reads JSON, anything else CSV.
SampleSet read_samples(const std::string& path,
                       const std::optional<Group>& expected = {});

void write_samples_csv(std::ostream& out, const SampleSet& samples);
void write_samples_csv(const std::string& path, const SampleSet& samples);

nlohmann::json to_json(const TestResult& result);
nlohmann::json to_json(const BatchResult& batch);

}  // namespace bistats
