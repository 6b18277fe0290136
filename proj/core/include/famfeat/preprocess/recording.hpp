#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "famfeat/montage.hpp"

namespace famfeat {

/// Continuous multi-channel recording. Samples are time x channel in
/// microvolts; each channel is a contiguous column.
struct Recording {
  std::vector<std::string> channels;
  Eigen::MatrixXd samples;
  double fs = 0.0;
  std::vector<std::size_t> stimulus_onsets;
  std::optional<std::size_t> eog_channel;

  std::size_t sample_count() const noexcept { return static_cast<std::size_t>(samples.rows()); }
  std::size_t channel_count() const noexcept { return channels.size(); }

  /// Indices of every channel except the EOG reference.
  std::vector<std::size_t> eeg_channels() const;

  /// Checks fs, shape, unique names and EOG index. Onset windows are checked
  /// by slice_epochs, which reports every offending onset at once.
  void validate() const;
};

/// Fixed-length single-trial window, time x channel.
struct Epoch {
  std::vector<std::string> channels;
  Eigen::MatrixXd samples;
  double fs = 0.0;
  Familiarity label = Familiarity::unfamiliar;
  std::string subject;
  std::size_t trial = 0;

  std::size_t sample_count() const noexcept { return static_cast<std::size_t>(samples.rows()); }
  std::size_t channel_count() const noexcept { return channels.size(); }
};

}  // namespace famfeat
