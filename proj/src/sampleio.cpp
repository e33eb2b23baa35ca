#include "bistats/sampleio.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bistats/errors.hpp"

namespace bistats {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

void check_expected(const Group& got, const std::optional<Group>& expected) {
  if (expected && *expected != got)
    throw ParseError("sample file is for group " + got.name() +
                     ", expected " + expected->name());
}

// Row values -> element matrix. Accepts the flattened matrix; for
// EuclideanVector also the bare k-vector.
Eigen::MatrixXd row_to_matrix(const Group& g, const std::vector<double>& vals,
                              int line_no) {
  const int n = g.matrix_size();
  if (g.kind() == GroupKind::Euclidean &&
      static_cast<int>(vals.size()) == g.dim()) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < g.dim(); ++i)
      m(i, n - 1) = vals[static_cast<size_t>(i)];
    return m;
  }
  if (static_cast<int>(vals.size()) != n * n)
    throw ParseError("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(n * n) + " values for " + g.name() +
                     ", got " + std::to_string(vals.size()));
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = vals[static_cast<size_t>(r * n + c)];
  return m;
}

GroupElement checked_element(const Group& g, const Eigen::MatrixXd& m,
                             int line_no) {
  try {
    return make_element(g, m);
  } catch (const MembershipError& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

SampleSet read_samples_csv(std::istream& in,
                           const std::optional<Group>& expected) {
  std::optional<Group> group;
  std::vector<GroupElement> elements;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string content = trim(line);
    if (content.empty()) continue;
    if (content[0] == '#') {
      const auto eq = content.find("group=");
      if (eq != std::string::npos) {
        const std::string token = trim(content.substr(eq + 6));
        if (group)
          throw ParseError("line " + std::to_string(line_no) +
                           ": duplicate group header");
        group = Group::parse(token);
        check_expected(*group, expected);
      }
      continue;
    }
    if (!group) {
      if (!expected)
        throw ParseError("line " + std::to_string(line_no) +
                         ": data before '# group=...' header and no group "
                         "given on the command line");
      group = expected;
    }
    for (auto& c : content)
      if (c == ',' || c == ';') c = ' ';
    std::istringstream row(content);
    std::vector<double> vals;
    double x;
    while (row >> x) vals.push_back(x);
    if (!row.eof())
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric value");
    elements.push_back(
        checked_element(*group, row_to_matrix(*group, vals, line_no), line_no));
  }
  if (!group) throw ParseError("sample file has no group header and no data");
  if (elements.empty()) throw ParseError("sample file has no elements");
  return make_sample_set(*group, std::move(elements));
}

SampleSet read_samples_json(std::istream& in,
                            const std::optional<Group>& expected) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("group") || !doc.contains("elements"))
    throw ParseError("sample JSON must have 'group' and 'elements'");
  const Group group = Group::parse(doc["group"].get<std::string>());
  check_expected(group, expected);
  std::vector<GroupElement> elements;
  int index = 0;
  for (const auto& row : doc["elements"]) {
    if (!row.is_array()) throw ParseError("element rows must be arrays");
    std::vector<double> vals;
    for (const auto& v : row) vals.push_back(v.get<double>());
    elements.push_back(
        checked_element(group, row_to_matrix(group, vals, index), index));
    ++index;
  }
  if (elements.empty()) throw ParseError("sample JSON has no elements");
  return make_sample_set(group, std::move(elements));
}

SampleSet read_samples(const std::string& path,
                       const std::optional<Group>& expected) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  const bool json = path.size() >= 5 &&
                    path.compare(path.size() - 5, 5, ".json") == 0;
  try {
    return json ? read_samples_json(in, expected)
                : read_samples_csv(in, expected);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  out << "# group=" << samples.group.name() << '\n';
  out << std::setprecision(17);
  const int n = samples.group.matrix_size();
  for (const auto& e : samples.elements) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out << e.mat(r, c) << (r == n - 1 && c == n - 1 ? '\n' : ',');
  }
}

void write_samples_csv(const std::string& path, const SampleSet& samples) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  write_samples_csv(out, samples);
}

nlohmann::json to_json(const TestResult& result) {
  return nlohmann::json{{"statistic", result.statistic_value},
                        {"p", result.p_value},
                        {"N", result.num_permutations_used},
                        {"exceed", result.num_exceeding},
                        {"degenerate", result.degenerate_permutations}};
}

nlohmann::json to_json(const BatchResult& batch) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : batch.per_feature) {
    if (f.ok)
      features.push_back(to_json(f.result));
    else
      features.push_back(nlohmann::json{{"error", f.error}});
  }
  nlohmann::json adjusted = nlohmann::json::array();
  for (double a : batch.adjusted_p) {
    if (std::isnan(a))
      adjusted.push_back(nullptr);
    else
      adjusted.push_back(a);
  }
  return nlohmann::json{{"features", std::move(features)},
                        {"adjusted_p", std::move(adjusted)},
                        {"rejected", batch.rejected}};
}

}  // namespace bistats
