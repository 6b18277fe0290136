#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

using ChannelPair = std::pair<std::size_t, std::size_t>;

/// All unordered pairs (i < j) of n channels, lexicographic.
std::vector<ChannelPair> all_channel_pairs(std::size_t n);

/// Pearson correlation per pair. Throws UndefinedError naming a constant
/// channel, ParameterError for an out-of-range index.
std::vector<double> channel_correlations(const Epoch& ep, const std::vector<ChannelPair>& pairs);

}  // namespace famfeat
