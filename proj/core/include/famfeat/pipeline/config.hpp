#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "famfeat/features/extract.hpp"
#include "famfeat/preprocess/epoching.hpp"
#include "famfeat/selection/cascade.hpp"

namespace famfeat {

struct FilterSettings {
  double lo = 0.5;
  double hi = 35.0;
  int order = 4;
};

struct IcaSettings {
  bool enabled = true;
  std::size_t components = 2;
  double eog_threshold = 0.7;
  std::size_t max_iterations = 500;
  double tolerance = 1e-4;
};

struct FeatureSettings {
  BandPlan plan = BandPlan::standard();
  PsdOptions psd;
  WaveletOptions wavelet;
  FamilyToggles families;
  /// Correlation pairs by channel name; nullopt means every pair.
  std::optional<std::vector<std::pair<std::string, std::string>>> pairs;

  /// Resolves pair names against a channel list.
  ExtractConfig resolve(const std::vector<std::string>& channels) const;
};

struct SvmSettings {
  double C = 1.0;
  double tolerance = 1e-3;
  bool sigma_search = true;
  std::vector<double> sigma_grid;  // empty: 0.1 * 2^k up to 10
  std::size_t refine_steps = 2;
  /// Used when sigma_search is off.
  double default_sigma = 0.85;

  std::vector<double> grid() const;
};

/// Every tunable of the pipeline, with the defaults used throughout.
struct PipelineConfig {
  FilterSettings filter;
  EpochWindow window;
  IcaSettings ica;
  FeatureSettings features;
  CascadeConfig selection;  // its seed is overwritten by `seed`
  SvmSettings svm;
  std::size_t cv_folds = 5;
  std::uint64_t seed = 0;

  /// Throws ParameterError naming the offending field.
  void validate() const;

  CascadeConfig cascade() const;
};

/// Canonical JSON text (sorted keys, 2-space indent, round-trip doubles).
std::string to_json_text(const PipelineConfig& config);

/// Missing keys keep their defaults; unknown keys are rejected. Throws
/// InputError with `source` as the file name.
PipelineConfig parse_config(const std::string& text, const std::string& source = "<config>");

PipelineConfig load_config(const std::string& path);

/// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const PipelineConfig& config);

}  // namespace famfeat
