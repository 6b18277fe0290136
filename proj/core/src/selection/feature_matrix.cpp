#include "famfeat/selection/feature_matrix.hpp"

#include <set>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {

void FeatureMatrix::validate() const {
  if (labels.size() != rows()) {
    throw ParameterError(fmt::format("{} labels for {} rows", labels.size(), rows()));
  }
  if (names.size() != cols()) {
    throw ParameterError(fmt::format("{} names for {} columns", names.size(), cols()));
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw ParameterError("duplicate feature name '" + n + "'");
  }
  if (!values.allFinite()) throw ParameterError("feature matrix contains non-finite entries");
  for (auto c : classes()) {
    if (rows_of(c).size() < 2) {
      throw ParameterError(fmt::format("class {} has fewer than 2 rows", to_string(c)));
    }
  }
}

std::vector<Familiarity> FeatureMatrix::classes() const {
  std::vector<Familiarity> out;
  for (auto f : kAllFamiliarity) {
    for (auto l : labels) {
      if (l == f) {
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

std::vector<std::size_t> FeatureMatrix::rows_of(Familiarity label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) out.push_back(i);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  FeatureMatrix out;
  out.names = names;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.values.row(static_cast<Eigen::Index>(i)) = values.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels.at(rows[i]));
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::size_t> cols) const {
  FeatureMatrix out;
  out.labels = labels;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.values.col(static_cast<Eigen::Index>(j)) = values.col(static_cast<Eigen::Index>(cols[j]));
    out.names.push_back(names.at(cols[j]));
  }
  return out;
}

FeatureMatrix FeatureMatrix::two_class(Familiarity a, Familiarity b) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == a || labels[i] == b) keep.push_back(i);
  }
  return select_rows(keep);
}

}  // namespace famfeat
