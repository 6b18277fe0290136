#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "famfeat/features/correlation.hpp"
#include "famfeat/features/spectrum.hpp"
#include "famfeat/features/wavelet.hpp"
#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

enum class FeatureFamily { statistical_time, frequency, harmonic, wavelet, correlation };

inline constexpr std::array<FeatureFamily, 5> kAllFamilies = {
    FeatureFamily::statistical_time, FeatureFamily::frequency, FeatureFamily::harmonic,
    FeatureFamily::wavelet, FeatureFamily::correlation};

std::string_view to_string(FeatureFamily f) noexcept;
/// Name prefix used in feature identifiers: stat, freq, harm, wav, corr.
std::string_view prefix(FeatureFamily f) noexcept;

struct FamilyToggles {
  bool statistical_time = true;
  bool frequency = true;
  bool harmonic = true;
  bool wavelet = true;
  bool correlation = true;

  bool enabled(FeatureFamily f) const noexcept;
};

struct ExtractConfig {
  BandPlan plan = BandPlan::standard();
  PsdOptions psd;
  WaveletOptions wavelet;
  FamilyToggles families;
  /// Correlation pairs; nullopt means every unordered pair.
  std::optional<std::vector<ChannelPair>> pairs;
};

/// PSD segments longer than the epoch are clipped to the epoch length.
/// Per channel: 5 statistical-time, 16 frequency (mode/median/mean, 10 RSP,
/// 3 slow-wave indices), 15 harmonic (3 x {delta, theta, alpha, beta, full}),
/// 16 wavelet. Then one correlation per configured pair.
inline constexpr std::size_t kPerChannelFeatures = 52;

struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;
};

/// Names in extraction order: channel-major per-channel blocks, then pairs.
std::vector<std::string> feature_names(const std::vector<std::string>& channels,
                                       const ExtractConfig& config);

/// Throws UndefinedError prefixed with the first undefined feature's name.
FeatureVector extract_epoch_features(const Epoch& ep, const ExtractConfig& config);

/// Like extract_epoch_features, but undefined features become NaN and are
/// listed in `missing` instead of aborting.
struct TolerantFeatures {
  FeatureVector features;
  std::vector<std::string> missing;
  std::vector<std::string> reasons;  // parallel to missing
};

TolerantFeatures extract_epoch_features_tolerant(const Epoch& ep, const ExtractConfig& config);

/// Decoded identifier. `channels` has one entry, or two for correlations.
struct FeatureId {
  FeatureFamily family = FeatureFamily::statistical_time;
  std::string statistic;
  std::string band;  // empty when not band-specific
  std::vector<std::string> channels;
};

/// Throws ParameterError for names not produced by feature_names.
FeatureId parse_feature_name(std::string_view name);

}  // namespace famfeat
