#pragma once

#include <string>
#include <vector>

#include "famfeat/pipeline/config.hpp"
#include "famfeat/pipeline/report.hpp"
#include "famfeat/selection/feature_matrix.hpp"

namespace famfeat {

/// Sigma search (or the configured default sigma) followed by stratified CV
/// on the given columns. Class ids are Familiarity values; any class count
/// >= 2 works (one-vs-one).
EvalReport evaluate_columns(const FeatureMatrix& fm, const PipelineConfig& config);

struct NestedFold {
  std::vector<std::string> features;
  double sigma = 0.0;
  bool partial = false;
};

struct NestedEvaluation {
  EvalReport report;
  std::vector<NestedFold> folds;
};

/// Outer stratified CV where each training split runs the whole selection
/// cascade and sigma search on its own rows before the held-out split is
/// scored. Avoids the optimistic bias of selecting features on all rows.
NestedEvaluation nested_evaluate(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                                 const PipelineConfig& config);

}  // namespace famfeat
