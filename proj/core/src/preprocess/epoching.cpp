#include "famfeat/preprocess/epoching.hpp"

#include <cmath>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {

std::size_t EpochWindow::start_offset(double fs) const {
  return static_cast<std::size_t>(std::llround(start_s * fs));
}

std::size_t EpochWindow::length(double fs) const {
  return static_cast<std::size_t>(std::llround((end_s - start_s) * fs));
}

std::vector<Epoch> slice_epochs(const Recording& rec, std::span<const Familiarity> labels,
                                const EpochWindow& window, const std::string& subject) {
  rec.validate();
  if (!(window.start_s >= 0.0) || !(window.start_s < window.end_s)) {
    throw ParameterError(fmt::format("invalid epoch window [{}, {}) s", window.start_s, window.end_s));
  }
  if (labels.size() != rec.stimulus_onsets.size()) {
    throw ParameterError(fmt::format("{} labels for {} stimulus onsets", labels.size(),
                                     rec.stimulus_onsets.size()));
  }

  const std::size_t offset = window.start_offset(rec.fs);
  const std::size_t length = window.length(rec.fs);
  if (length == 0) throw ParameterError("epoch window shorter than one sample");

  std::vector<std::size_t> bad;
  for (std::size_t onset : rec.stimulus_onsets) {
    if (onset + offset + length > rec.sample_count()) bad.push_back(onset);
  }
  if (!bad.empty()) throw EpochWindowError(std::move(bad));

  const auto eeg = rec.eeg_channels();
  std::vector<std::string> names;
  for (auto c : eeg) names.push_back(rec.channels[c]);

  std::vector<Epoch> epochs;
  epochs.reserve(labels.size());
  for (std::size_t i = 0; i < rec.stimulus_onsets.size(); ++i) {
    Epoch ep;
    ep.channels = names;
    ep.fs = rec.fs;
    ep.label = labels[i];
    ep.subject = subject;
    ep.trial = i;
    ep.samples.resize(static_cast<Eigen::Index>(length), static_cast<Eigen::Index>(eeg.size()));
    const auto first = static_cast<Eigen::Index>(rec.stimulus_onsets[i] + offset);
    for (std::size_t k = 0; k < eeg.size(); ++k) {
      ep.samples.col(static_cast<Eigen::Index>(k)) =
          rec.samples.col(static_cast<Eigen::Index>(eeg[k])).segment(first, static_cast<Eigen::Index>(length));
    }
    epochs.push_back(std::move(ep));
  }
  return epochs;
}

}  // namespace famfeat
