#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "famfeat/classify/svm.hpp"
#include "famfeat/selection/feature_matrix.hpp"
#include "famfeat/selection/fisher.hpp"
#include "famfeat/selection/floating_search.hpp"
#include "famfeat/selection/ttest.hpp"

namespace famfeat {

struct CascadeConfig {
  std::size_t stage1_size = 500;
  std::size_t stage2_size = 100;
  std::size_t stage3_size = 20;
  double alpha = 0.01;
  TTestKind ttest = TTestKind::welch;
  FdrDenominator fdr = FdrDenominator::squared;
  FloatingSearchOptions search;
  // Wrapper evaluator: k-fold CV of a Gaussian SVM with
  // sigma = sigma_scale * sqrt(subset size) on z-scored columns.
  std::size_t folds = 5;
  double C = 1.0;
  double sigma_scale = 1.0;
  std::uint64_t seed = 0;
  SvmOptions svm;

  /// Throws ParameterError unless sizes are positive and strictly decreasing
  /// and alpha lies in (0, 1).
  void validate() const;
};

struct SelectionReport {
  std::string class_a, class_b;
  std::vector<std::string> names;      // every input column
  std::vector<std::size_t> stage1;     // by ascending p
  std::vector<double> stage1_p;
  std::vector<std::size_t> stage2;     // in selection order
  std::vector<double> stage2_fdr;
  bool stage2_shortfall = false;
  std::vector<std::size_t> stage3;     // ascending column index
  double stage3_ccr = 0.0;
  std::vector<SearchStep> trace;
  std::vector<std::string> failures;   // wrapper evaluations scored 0
  std::size_t degenerate_columns = 0;  // zero variance in both classes
  /// Fewer survivors than the final size at some stage.
  bool partial = false;

  std::vector<std::string> final_names() const;
};

/// Scores column subsets of a two-class matrix by cross-validated SVM CCR
/// (percent). Columns are z-scored once over all rows and folds are fixed at
/// construction, so every candidate sees the same split. One Gram matrix per
/// subset serves all folds.
class SvmSubsetEvaluator {
 public:
  SvmSubsetEvaluator(const FeatureMatrix& fm, Familiarity a, Familiarity b, const CascadeConfig& config);

  double operator()(std::span<const std::size_t> columns) const;

 private:
  Eigen::MatrixXd z_;
  std::vector<double> y_;
  std::vector<std::size_t> folds_;
  std::size_t k_;
  double C_, sigma_scale_;
  SvmOptions svm_;
};

/// t-test filter, orthogonal FDR selection, then floating wrapper search, all
/// on the rows of classes a and b.
SelectionReport run_selection_cascade(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                                      const CascadeConfig& config);

}  // namespace famfeat
