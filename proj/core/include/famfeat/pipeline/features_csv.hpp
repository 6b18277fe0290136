#pragma once

#include <string>
#include <vector>

#include "famfeat/selection/feature_matrix.hpp"

namespace famfeat {

/// Feature names then a final "label" column; missing values are "NA".
/// Values may hold NaN, unlike FeatureMatrix.
struct FeatureTable {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
  std::vector<Familiarity> labels;

  std::size_t missing_count() const;
};

std::string format_feature_csv(const FeatureTable& t);
FeatureTable parse_feature_csv(const std::string& text, const std::string& file);
FeatureTable read_feature_csv(const std::string& path);

/// Columns without missing values. `dropped` receives the others' names.
FeatureMatrix complete_columns(const FeatureTable& t, std::vector<std::string>* dropped = nullptr);

/// Named columns in the given order; throws ParameterError for unknown names
/// or columns with missing values.
FeatureMatrix named_columns(const FeatureTable& t, const std::vector<std::string>& names);

}  // namespace famfeat
