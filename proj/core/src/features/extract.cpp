#include "famfeat/features/extract.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/features/moments.hpp"

namespace famfeat {
namespace {

constexpr std::array<std::string_view, 5> kStatNames = {"skewness", "kurtosis", "activity", "mobility",
                                                        "complexity"};
constexpr std::array<std::string_view, 3> kHarmonicNames = {"fc", "fsigma", "sfc"};
constexpr std::array<std::string_view, 4> kStandardizedNames = {"mean", "std", "skew", "kurt"};
constexpr std::array<std::string_view, 4> kCentralNames = {"mean", "m2", "m3", "m4"};

std::vector<Band> harmonic_bands(const BandPlan& plan) {
  std::vector<Band> bands = plan.parents;
  bands.push_back(plan.full_band);
  return bands;
}

std::vector<ChannelPair> resolve_pairs(std::size_t n_channels, const ExtractConfig& config) {
  return config.pairs ? *config.pairs : all_channel_pairs(n_channels);
}

// Emits values group by group in the same order as feature_names. A group
// that raises UndefinedError is reported through `fail` and filled with NaN.
using FailFn = std::function<void(std::size_t first, std::size_t count, const std::string& why)>;

class GroupWriter {
 public:
  GroupWriter(std::vector<double>& out, FailFn fail) : out_(out), fail_(std::move(fail)) {}

  template <typename Fn>
  void group(std::size_t count, Fn&& fn) {
    const std::size_t first = out_.size();
    try {
      fn(out_);
      if (out_.size() != first + count) throw std::logic_error("feature group size mismatch");
    } catch (const UndefinedError& e) {
      out_.resize(first);
      out_.insert(out_.end(), count, std::numeric_limits<double>::quiet_NaN());
      fail_(first, count, e.what());
    }
  }

 private:
  std::vector<double>& out_;
  FailFn fail_;
};

void extract_values(const Epoch& ep, const ExtractConfig& config, std::vector<double>& values,
                    const FailFn& fail) {
  if (!(ep.fs > 0.0)) throw ParameterError("epoch sampling rate must be positive");
  if (static_cast<std::size_t>(ep.samples.cols()) != ep.channels.size()) {
    throw ParameterError("epoch channel names do not match its sample matrix");
  }
  config.plan.validate();
  const auto& fam = config.families;
  const auto len = static_cast<std::size_t>(ep.samples.rows());
  const auto hbands = harmonic_bands(config.plan);
  const std::size_t n_sub = config.plan.sub_bands.size();

  GroupWriter writer(values, fail);
  for (std::size_t c = 0; c < ep.channels.size(); ++c) {
    const std::span<const double> x(ep.samples.col(static_cast<Eigen::Index>(c)).data(), len);

    if (fam.statistical_time) {
      writer.group(5, [&](std::vector<double>& out) {
        const auto s = statistical_time_features(x, ep.fs);
        out.insert(out.end(), {s.skewness, s.kurtosis, s.activity, s.mobility, s.complexity});
      });
    }

    std::optional<Psd> psd;
    if (fam.frequency || fam.harmonic) {
      PsdOptions opts = config.psd;
      opts.segment_length = std::min(opts.segment_length, len);
      psd = estimate_psd(x, ep.fs, opts);
    }

    if (fam.frequency) {
      writer.group(3, [&](std::vector<double>& out) {
        const auto f = spectral_frequency_features(*psd);
        out.insert(out.end(), {f.mode, f.median, f.mean});
      });
      std::optional<BandPowers> bp;
      writer.group(n_sub, [&](std::vector<double>& out) {
        bp = band_powers(*psd, config.plan);
        out.insert(out.end(), bp->relative.begin(), bp->relative.end());
      });
      writer.group(3, [&](std::vector<double>& out) {
        if (!bp) throw UndefinedError("slow-wave indices need band powers");
        const auto& pa = bp->parent_absolute;
        const auto s = slow_wave_indices(pa.at(0), pa.at(1), pa.at(2));
        out.insert(out.end(), {s.dsi, s.tsi, s.asi});
      });
    }

    if (fam.harmonic) {
      for (const auto& band : hbands) {
        writer.group(3, [&](std::vector<double>& out) {
          const auto h = harmonic_parameters(*psd, band.lo, band.hi);
          out.insert(out.end(), {h.center, h.spread, h.density});
        });
      }
    }

    if (fam.wavelet) {
      writer.group(16, [&](std::vector<double>& out) {
        const auto w = dwt_band_moments(x, ep.fs, config.wavelet);
        out.insert(out.end(), w.begin(), w.end());
      });
    }
  }

  if (fam.correlation) {
    for (const auto& pair : resolve_pairs(ep.channels.size(), config)) {
      writer.group(1, [&](std::vector<double>& out) {
        out.push_back(channel_correlations(ep, {pair}).front());
      });
    }
  }
}

}  // namespace

std::string_view to_string(FeatureFamily f) noexcept {
  switch (f) {
    case FeatureFamily::statistical_time: return "statistical_time";
    case FeatureFamily::frequency: return "frequency";
    case FeatureFamily::harmonic: return "harmonic";
    case FeatureFamily::wavelet: return "wavelet";
    case FeatureFamily::correlation: return "correlation";
  }
  return "unknown";
}

std::string_view prefix(FeatureFamily f) noexcept {
  switch (f) {
    case FeatureFamily::statistical_time: return "stat";
    case FeatureFamily::frequency: return "freq";
    case FeatureFamily::harmonic: return "harm";
    case FeatureFamily::wavelet: return "wav";
    case FeatureFamily::correlation: return "corr";
  }
  return "unknown";
}

bool FamilyToggles::enabled(FeatureFamily f) const noexcept {
  switch (f) {
    case FeatureFamily::statistical_time: return statistical_time;
    case FeatureFamily::frequency: return frequency;
    case FeatureFamily::harmonic: return harmonic;
    case FeatureFamily::wavelet: return wavelet;
    case FeatureFamily::correlation: return correlation;
  }
  return false;
}

std::vector<std::string> feature_names(const std::vector<std::string>& channels,
                                       const ExtractConfig& config) {
  const auto& fam = config.families;
  const auto hbands = harmonic_bands(config.plan);
  const auto& wnames =
      config.wavelet.moments == WaveletMoments::central ? kCentralNames : kStandardizedNames;

  std::vector<std::string> names;
  for (const auto& ch : channels) {
    if (fam.statistical_time) {
      for (auto s : kStatNames) names.push_back(fmt::format("stat.{}.{}", s, ch));
    }
    if (fam.frequency) {
      for (auto s : {"mode", "median", "mean"}) names.push_back(fmt::format("freq.{}.{}", s, ch));
      for (const auto& sb : config.plan.sub_bands) names.push_back(fmt::format("freq.rsp.{}.{}", sb.name, ch));
      for (auto s : {"dsi", "tsi", "asi"}) names.push_back(fmt::format("freq.{}.{}", s, ch));
    }
    if (fam.harmonic) {
      for (const auto& band : hbands)
        for (auto s : kHarmonicNames) names.push_back(fmt::format("harm.{}.{}.{}", s, band.name, ch));
    }
    if (fam.wavelet) {
      for (auto g : kWaveletGroups)
        for (auto s : wnames) names.push_back(fmt::format("wav.{}.{}.{}", s, g, ch));
    }
  }
  if (fam.correlation) {
    for (const auto& [a, b] : resolve_pairs(channels.size(), config)) {
      if (a >= channels.size() || b >= channels.size()) {
        throw ParameterError(fmt::format("channel pair ({}, {}) out of range", a, b));
      }
      names.push_back(fmt::format("corr.{}.{}", channels[a], channels[b]));
    }
  }
  return names;
}

FeatureVector extract_epoch_features(const Epoch& ep, const ExtractConfig& config) {
  FeatureVector fv;
  fv.names = feature_names(ep.channels, config);
  fv.values.reserve(fv.names.size());
  extract_values(ep, config, fv.values, [&](std::size_t first, std::size_t, const std::string& why) {
    throw UndefinedError(fmt::format("feature {}: {}", fv.names.at(first), why));
  });
  return fv;
}

TolerantFeatures extract_epoch_features_tolerant(const Epoch& ep, const ExtractConfig& config) {
  TolerantFeatures out;
  out.features.names = feature_names(ep.channels, config);
  out.features.values.reserve(out.features.names.size());
  extract_values(ep, config, out.features.values,
                 [&](std::size_t first, std::size_t count, const std::string& why) {
                   for (std::size_t i = first; i < first + count; ++i) {
                     out.missing.push_back(out.features.names.at(i));
                     out.reasons.push_back(why);
                   }
                 });
  return out;
}

FeatureId parse_feature_name(std::string_view name) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto dot = name.find('.', start);
    parts.emplace_back(name.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  auto bad = [&] { return ParameterError(fmt::format("unrecognized feature name '{}'", name)); };
  if (parts.size() < 3) throw bad();

  FeatureId id;
  const auto& head = parts[0];
  if (head == "corr") {
    if (parts.size() != 3) throw bad();
    id.family = FeatureFamily::correlation;
    id.statistic = "r";
    id.channels = {parts[1], parts[2]};
    return id;
  }
  if (head == "stat") {
    id.family = FeatureFamily::statistical_time;
  } else if (head == "freq") {
    id.family = FeatureFamily::frequency;
  } else if (head == "harm") {
    id.family = FeatureFamily::harmonic;
  } else if (head == "wav") {
    id.family = FeatureFamily::wavelet;
  } else {
    throw bad();
  }
  id.statistic = parts[1];
  if (parts.size() == 4) {
    id.band = parts[2];
  } else if (parts.size() != 3) {
    throw bad();
  }
  id.channels = {parts.back()};
  return id;
}

}  // namespace famfeat
