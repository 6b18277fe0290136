#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "famfeat/montage.hpp"

namespace famfeat {

/// Epochs x features. Columns are contiguous.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<Familiarity> labels;
  std::vector<std::string> names;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }

  std::span<const double> column(std::size_t j) const {
    return {values.col(static_cast<Eigen::Index>(j)).data(), rows()};
  }

  /// Finite entries, unique names, consistent sizes, >= 2 rows per present class.
  void validate() const;

  /// Present classes in enum order.
  std::vector<Familiarity> classes() const;
  std::vector<std::size_t> rows_of(Familiarity label) const;

  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;
  FeatureMatrix select_columns(std::span<const std::size_t> cols) const;

  /// Rows whose label is a or b, in original order.
  FeatureMatrix two_class(Familiarity a, Familiarity b) const;
};

}  // namespace famfeat
