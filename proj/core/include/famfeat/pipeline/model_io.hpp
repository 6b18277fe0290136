#pragma once

#include <string>
#include <vector>

#include "famfeat/classify/evaluation.hpp"
#include "famfeat/classify/multiclass.hpp"

namespace famfeat {

/// Everything needed to classify a feature row: the columns it uses, the
/// training-set standardizer and the pairwise machines. Class ids in the
/// machines are Familiarity enum values.
struct ModelArtifact {
  std::vector<std::string> features;
  Standardizer scaler;
  MulticlassModel model;
  double sigma = 0.0;
  double C = 0.0;
};

/// JSON text, {"format": "famfeat-model", "version": 1, ...}; doubles round-trip.
std::string format_model(const ModelArtifact& m);
ModelArtifact parse_model(const std::string& text, const std::string& file);
ModelArtifact read_model(const std::string& path);

}  // namespace famfeat
