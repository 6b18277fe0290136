#include "famfeat/features/correlation.hpp"

#include <fmt/format.h>

#include "famfeat/error.hpp"
#include "famfeat/stats.hpp"

namespace famfeat {

std::vector<ChannelPair> all_channel_pairs(std::size_t n) {
  std::vector<ChannelPair> pairs;
  pairs.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

std::vector<double> channel_correlations(const Epoch& ep, const std::vector<ChannelPair>& pairs) {
  const auto n_ch = static_cast<std::size_t>(ep.samples.cols());
  const auto len = static_cast<std::size_t>(ep.samples.rows());
  auto column = [&](std::size_t c) { return std::span<const double>(ep.samples.col(static_cast<Eigen::Index>(c)).data(), len); };
  auto name = [&](std::size_t c) { return c < ep.channels.size() ? ep.channels[c] : fmt::format("#{}", c); };

  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a >= n_ch || b >= n_ch) {
      throw ParameterError(fmt::format("channel pair ({}, {}) out of range for {} channels", a, b, n_ch));
    }
    for (auto c : {a, b}) {
      if (variance(column(c)) <= 0.0) {
        throw UndefinedError(fmt::format("correlation undefined: channel {} is constant", name(c)));
      }
    }
    out.push_back(pearson(column(a), column(b)));
  }
  return out;
}

}  // namespace famfeat
