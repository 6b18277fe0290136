#pragma once

#include <span>
#include <string>
#include <vector>

#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

/// Post-stimulus window, seconds after onset.
struct EpochWindow {
  double start_s = 0.2;
  double end_s = 2.0;

  std::size_t start_offset(double fs) const;
  std::size_t length(double fs) const;
};

/// One epoch per stimulus onset covering [onset + round(start*fs),
/// + round((end-start)*fs)). EEG channels only; the EOG reference is dropped.
/// Throws EpochWindowError naming every onset whose window overruns the end.
std::vector<Epoch> slice_epochs(const Recording& rec, std::span<const Familiarity> labels,
                                const EpochWindow& window = {}, const std::string& subject = {});

}  // namespace famfeat
