#pragma once

#include <span>
#include <vector>

#include "famfeat/classify/svm.hpp"

namespace famfeat {

/// One binary machine per unordered class pair, in (i < j) order over
/// `classes` (ascending).
struct MulticlassModel {
  std::vector<int> classes;
  std::vector<SvmModel> machines;
};

/// Throws ParameterError for fewer than 2 classes or a class with < 2 rows.
MulticlassModel train_one_vs_one(const Eigen::MatrixXd& x, std::span<const int> y, double sigma,
                                 double C, const SvmOptions& options = {});

struct VoteResult {
  int label = 0;
  std::vector<int> votes;            // parallel to classes
  std::vector<double> decision_sum;  // sum of |decision| of the votes each class won
};

/// Majority vote. Ties go to the tied class with the largest summed |decision|,
/// then to the earlier class.
VoteResult vote_one_vs_one(const MulticlassModel& model, std::span<const double> x);

int predict_one_vs_one(const MulticlassModel& model, std::span<const double> x);

}  // namespace famfeat
