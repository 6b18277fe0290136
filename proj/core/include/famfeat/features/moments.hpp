#pragma once

#include <span>

namespace famfeat {

/// k-th central moment (1/n) sum (x_i - mean)^k.
double central_moment(std::span<const double> x, int k);

/// Skewness, kurtosis and the three Hjorth descriptors of one channel.
struct StatisticalTimeFeatures {
  double skewness = 0.0;
  double kurtosis = 0.0;  // non-excess: Gaussian -> 3
  double activity = 0.0;
  double mobility = 0.0;  // rad/s
  double complexity = 0.0;
};

/// Derivatives are first differences scaled by fs. Needs at least 3 samples
/// and a non-constant first difference; throws UndefinedError otherwise.
StatisticalTimeFeatures statistical_time_features(std::span<const double> x, double fs);

/// sigma(x') / sigma(x) with x' = fs * diff(x).
double hjorth_mobility(std::span<const double> x, double fs);

}  // namespace famfeat
