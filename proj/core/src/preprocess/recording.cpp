#include "famfeat/preprocess/recording.hpp"

#include <set>

#include <fmt/format.h>

#include "famfeat/error.hpp"

namespace famfeat {

std::vector<std::size_t> Recording::eeg_channels() const {
  std::vector<std::size_t> out;
  out.reserve(channels.size());
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (!eog_channel || *eog_channel != c) out.push_back(c);
  }
  return out;
}

void Recording::validate() const {
  if (!(fs > 0.0)) throw ParameterError(fmt::format("sampling rate must be positive, got {}", fs));
  if (channels.empty()) throw ParameterError("recording has no channels");
  if (static_cast<std::size_t>(samples.cols()) != channels.size()) {
    throw ParameterError(fmt::format("sample matrix has {} columns but {} channel names",
                                     samples.cols(), channels.size()));
  }
  std::set<std::string> seen;
  for (const auto& name : channels) {
    if (!seen.insert(name).second) throw ParameterError("duplicate channel name '" + name + "'");
  }
  if (eog_channel && *eog_channel >= channels.size()) {
    throw ParameterError(fmt::format("EOG channel index {} out of range", *eog_channel));
  }
  if (!samples.allFinite()) throw ParameterError("recording contains non-finite samples");
}

}  // namespace famfeat
